#include "cohstate/sampling.hpp"

#include <algorithm>

#include <Eigen/Dense>

namespace cohstate {

CoherentFrame random_frame(Rng& rng, int species, int modes) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd m(modes, modes);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
  }
  const Eigen::MatrixXcd q = Eigen::HouseholderQR<Eigen::MatrixXcd>(m).householderQ();
  std::vector<std::vector<Complex>> rows(static_cast<std::size_t>(species));
  for (int s = 0; s < species; ++s) {
    for (int i = 0; i < modes; ++i) rows[static_cast<std::size_t>(s)].push_back(q(i, s));
  }
  return CoherentFrame::validate(rows);
}

Occupancy random_occupancy(Rng& rng, int species, int total) {
  // stars and bars: choose species-1 cut points in [0, total]
  std::uniform_int_distribution<int> cut(0, total);
  std::vector<int> cuts(static_cast<std::size_t>(species - 1));
  for (int& c : cuts) c = cut(rng);
  std::sort(cuts.begin(), cuts.end());
  Occupancy occ;
  int prev = 0;
  for (int c : cuts) {
    occ.push_back(c - prev);
    prev = c;
  }
  occ.push_back(total - prev);
  return occ;
}

NormalTerm random_term(Rng& rng, int modes, int creators, int annihilators) {
  std::uniform_int_distribution<int> mode(1, modes);
  std::uniform_real_distribution<double> mag(0.5, 1.5);
  std::uniform_real_distribution<double> phase(0.0, 6.283185307179586);
  NormalTerm t;
  t.coeff = std::polar(mag(rng), phase(rng));
  for (int k = 0; k < creators; ++k) t.creators.push_back(mode(rng));
  for (int k = 0; k < annihilators; ++k) t.annihilators.push_back(mode(rng));
  std::sort(t.creators.begin(), t.creators.end());
  std::sort(t.annihilators.begin(), t.annihilators.end());
  return t;
}

OperatorPoly random_poly(Rng& rng, int modes, int terms, int max_degree) {
  std::uniform_int_distribution<int> mode(1, modes);
  std::uniform_int_distribution<int> degree(1, max_degree);
  std::bernoulli_distribution dagger(0.5);
  std::normal_distribution<double> gauss;
  OperatorPoly p(modes);
  for (int k = 0; k < terms; ++k) {
    OperatorPoly::Product prod{Complex(gauss(rng), gauss(rng)), {}};
    const int d = degree(rng);
    for (int f = 0; f < d; ++f) prod.factors.push_back({mode(rng), dagger(rng)});
    p.add_term(std::move(prod));
  }
  return p;
}

OracleCase random_oracle_case(Rng& rng) {
  constexpr int n = 3;
  constexpr int max_total = 6;
  constexpr int max_body = 3;
  std::uniform_int_distribution<int> species_dist(1, 3);
  std::uniform_int_distribution<int> body_dist(0, max_body);
  std::bernoulli_distribution unbalanced(0.2);

  const int S = species_dist(rng);
  const int m_ket = body_dist(rng);
  const int m_bra = unbalanced(rng) ? body_dist(rng) : m_ket;
  // ket total N, bra total N - m_ket + m_bra, both within [0, max_total]
  const int lo = std::max(0, m_ket - m_bra);
  const int hi = std::min(max_total, max_total + m_ket - m_bra);
  std::uniform_int_distribution<int> total_dist(lo, hi);
  const int N = total_dist(rng);
  const int N_bra = N - m_ket + m_bra;

  CoherentFrame frame = random_frame(rng, S, n);
  Occupancy ket = random_occupancy(rng, S, N);
  Occupancy bra = random_occupancy(rng, S, N_bra);
  NormalTerm term = random_term(rng, n, m_bra, m_ket);
  return {std::move(frame), std::move(bra), std::move(ket), std::move(term)};
}

}  // namespace cohstate
