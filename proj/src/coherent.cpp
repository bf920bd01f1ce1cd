#include "cohstate/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "cohstate/combinatorics.hpp"

namespace cohstate {

namespace {

constexpr double kDirectPairLimit = 1e6;

// One index tuple (t_1..t_m) for a product of lowering operators: its
// multiplicity vector and prod_i alpha_{t_i, r_i}.
struct TupleTerm {
  MultiplicityVector nu;
  Complex product;
};

std::vector<TupleTerm> enumerate_tuples(const CoherentFrame& frame, std::span<const int> modes) {
  const int S = frame.species();
  const std::size_t m = modes.size();
  std::vector<TupleTerm> out;
  std::vector<int> t(m, 0);
  while (true) {
    TupleTerm term{MultiplicityVector(static_cast<std::size_t>(S), 0), Complex(1.0, 0.0)};
    for (std::size_t i = 0; i < m; ++i) {
      ++term.nu[static_cast<std::size_t>(t[i])];
      term.product *= frame.alpha(t[i], modes[i]);
    }
    out.push_back(std::move(term));
    // odometer over S^m tuples, last index fastest
    std::size_t pos = m;
    while (pos > 0) {
      --pos;
      if (++t[pos] < S) break;
      t[pos] = 0;
      if (pos == 0) return out;
    }
    if (m == 0) return out;
  }
}

std::map<MultiplicityVector, Complex> collect_by_multiplicity(const CoherentFrame& frame,
                                                              std::span<const int> modes) {
  std::map<MultiplicityVector, Complex> out;
  for (auto& term : enumerate_tuples(frame, modes)) out[term.nu] += term.product;
  return out;
}

void check_occupancy(const CoherentFrame& frame, const Occupancy& occ, const char* what) {
  if (static_cast<int>(occ.size()) != frame.species()) {
    throw std::invalid_argument(std::string(what) + ": occupancy has " +
                                std::to_string(occ.size()) + " entries, frame has " +
                                std::to_string(frame.species()) + " species");
  }
  for (int k : occ) {
    if (k < 0) throw std::invalid_argument(std::string(what) + ": negative occupation number");
  }
}

void check_term(const CoherentFrame& frame, const NormalTerm& term) {
  auto bad = [&](int i) { return i < 1 || i > frame.modes(); };
  if (std::any_of(term.creators.begin(), term.creators.end(), bad) ||
      std::any_of(term.annihilators.begin(), term.annihilators.end(), bad)) {
    throw std::invalid_argument("frame/term dimension mismatch: term references a mode outside [1, " +
                                std::to_string(frame.modes()) + "]");
  }
}

int total(const Occupancy& occ) {
  int n = 0;
  for (int k : occ) n += k;
  return n;
}

// prod_s N_s^(nu_s), or 0 if any species is over-annihilated.
std::uint64_t falling_weight(const Occupancy& occ, const MultiplicityVector& nu) {
  std::uint64_t w = 1;
  for (std::size_t s = 0; s < occ.size(); ++s) {
    const std::uint64_t f = falling_factorial(occ[s], nu[s]);
    if (f == 0) return 0;
    w *= f;
  }
  return w;
}

// sqrt(a * b), exact when a == b.
double root_product(std::uint64_t a, std::uint64_t b) {
  if (a == b) return static_cast<double>(a);
  return static_cast<double>(std::sqrt(static_cast<long double>(a) * static_cast<long double>(b)));
}

bool same_remainder(const Occupancy& bra, const MultiplicityVector& nu_bra, const Occupancy& ket,
                    const MultiplicityVector& nu_ket) {
  for (std::size_t s = 0; s < bra.size(); ++s) {
    if (bra[s] - nu_bra[s] != ket[s] - nu_ket[s]) return false;
  }
  return true;
}

Complex direct_sum(const CoherentFrame& frame, const Occupancy& bra, const Occupancy& ket,
                   const NormalTerm& term, EvalStats* stats) {
  const auto bra_tuples = enumerate_tuples(frame, term.creators);
  const auto ket_tuples = enumerate_tuples(frame, term.annihilators);
  Complex sum(0.0, 0.0);
  for (const auto& tb : bra_tuples) {
    for (const auto& tk : ket_tuples) {
      if (stats) ++stats->visited_pairs;
      if (!same_remainder(bra, tb.nu, ket, tk.nu)) continue;
      if (stats) ++stats->delta_pairs;
      const std::uint64_t wb = falling_weight(bra, tb.nu);
      const std::uint64_t wk = falling_weight(ket, tk.nu);
      if (wb == 0 || wk == 0) continue;
      if (stats) ++stats->contributing_pairs;
      sum += root_product(wb, wk) * std::conj(tb.product) * tk.product;
    }
  }
  return sum;
}

Complex grouped_sum(const CoherentFrame& frame, const Occupancy& bra, const Occupancy& ket,
                    const NormalTerm& term, EvalStats* stats) {
  const auto bra_groups = collect_by_multiplicity(frame, term.creators);
  const auto ket_groups = collect_by_multiplicity(frame, term.annihilators);
  Complex sum(0.0, 0.0);
  for (const auto& [nu_b, coeff_b] : bra_groups) {
    for (const auto& [nu_k, coeff_k] : ket_groups) {
      if (stats) ++stats->groups;
      if (!same_remainder(bra, nu_b, ket, nu_k)) continue;
      const std::uint64_t wb = falling_weight(bra, nu_b);
      const std::uint64_t wk = falling_weight(ket, nu_k);
      if (wb == 0 || wk == 0) continue;
      sum += root_product(wb, wk) * std::conj(coeff_b) * coeff_k;
    }
  }
  return sum;
}

}  // namespace

CoherentFrame CoherentFrame::validate(const std::vector<std::vector<Complex>>& rows, double tol) {
  const int S = static_cast<int>(rows.size());
  if (S < 1) throw FrameError("frame has no species rows");
  const int n = static_cast<int>(rows.front().size());
  if (n < 1) throw FrameError("frame rows are empty");
  for (std::size_t s = 0; s < rows.size(); ++s) {
    if (static_cast<int>(rows[s].size()) != n) {
      throw FrameError("frame row " + std::to_string(s + 1) + " has " +
                       std::to_string(rows[s].size()) + " coefficients, expected " +
                       std::to_string(n));
    }
  }
  if (S > n) {
    throw FrameError("frame has S = " + std::to_string(S) + " species but only n = " +
                     std::to_string(n) + " modes");
  }
  const double dev = gram_deviation(rows);
  if (!(dev <= tol)) {
    throw FrameError("frame rows are not orthonormal (max Gram deviation " + std::to_string(dev) +
                     ")");
  }
  std::vector<Complex> alpha;
  alpha.reserve(static_cast<std::size_t>(S * n));
  for (const auto& row : rows) alpha.insert(alpha.end(), row.begin(), row.end());
  return CoherentFrame(n, S, std::move(alpha));
}

std::vector<std::vector<Complex>> CoherentFrame::rows() const {
  std::vector<std::vector<Complex>> out(static_cast<std::size_t>(species_));
  for (int s = 0; s < species_; ++s) {
    for (int i = 1; i <= modes_; ++i) out[static_cast<std::size_t>(s)].push_back(alpha(s, i));
  }
  return out;
}

double gram_deviation(const std::vector<std::vector<Complex>>& rows) {
  double dev = 0.0;
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < rows.size(); ++b) {
      Complex g(0.0, 0.0);
      for (std::size_t i = 0; i < std::min(rows[a].size(), rows[b].size()); ++i) {
        g += std::conj(rows[a][i]) * rows[b][i];
      }
      dev = std::max(dev, std::abs(g - Complex(a == b ? 1.0 : 0.0, 0.0)));
    }
  }
  return dev;
}

std::vector<std::pair<Occupancy, Complex>> annihilate_product(const CoherentFrame& frame,
                                                              const Occupancy& occ,
                                                              std::span<const int> modes) {
  check_occupancy(frame, occ, "occupancy");
  for (int r : modes) {
    if (r < 1 || r > frame.modes()) {
      throw std::out_of_range("mode index " + std::to_string(r) + " outside [1, " +
                              std::to_string(frame.modes()) + "]");
    }
  }
  std::map<Occupancy, Complex> acc;
  for (const auto& t : enumerate_tuples(frame, modes)) {
    const std::uint64_t w = falling_weight(occ, t.nu);
    if (w == 0) continue;
    Occupancy reduced = occ;
    for (std::size_t s = 0; s < reduced.size(); ++s) reduced[s] -= t.nu[s];
    acc[reduced] += std::sqrt(static_cast<double>(w)) * t.product;
  }
  return {acc.begin(), acc.end()};
}

Complex matrix_element(const CoherentFrame& frame, const Occupancy& bra, const Occupancy& ket,
                       const NormalTerm& term, EvalMode mode, EvalStats* stats) {
  check_occupancy(frame, bra, "bra");
  check_occupancy(frame, ket, "ket");
  check_term(frame, term);
  const int m_bra = static_cast<int>(term.creators.size());
  const int m_ket = static_cast<int>(term.annihilators.size());
  if (total(bra) - m_bra != total(ket) - m_ket) return {0.0, 0.0};

  if (mode == EvalMode::Auto) {
    const double pairs = std::pow(static_cast<double>(frame.species()), m_bra + m_ket);
    mode = pairs <= kDirectPairLimit ? EvalMode::Direct : EvalMode::Grouped;
  }
  const Complex sum = mode == EvalMode::Direct ? direct_sum(frame, bra, ket, term, stats)
                                               : grouped_sum(frame, bra, ket, term, stats);
  return term.coeff * sum;
}

Complex matrix_element_poly(const CoherentFrame& frame, const Occupancy& bra,
                            const Occupancy& ket, const OperatorPoly& p, EvalMode mode) {
  if (p.modes() != frame.modes()) {
    throw std::invalid_argument("frame/operator dimension mismatch: " +
                                std::to_string(frame.modes()) + " vs " +
                                std::to_string(p.modes()) + " modes");
  }
  Complex sum(0.0, 0.0);
  for (const auto& term : simplify(normal_order(p), 0.0).normal_terms()) {
    sum += matrix_element(frame, bra, ket, term, mode);
  }
  return sum;
}

Complex expectation(const CoherentFrame& frame, const Occupancy& occ, const NormalTerm& term) {
  check_occupancy(frame, occ, "occupancy");
  check_term(frame, term);
  if (!term.number_conserving()) return {0.0, 0.0};
  const auto bra_groups = collect_by_multiplicity(frame, term.creators);
  const auto ket_groups = collect_by_multiplicity(frame, term.annihilators);
  Complex sum(0.0, 0.0);
  for (const auto& [nu, coeff_k] : ket_groups) {
    const auto it = bra_groups.find(nu);
    if (it == bra_groups.end()) continue;
    const std::uint64_t w = falling_weight(occ, nu);
    if (w == 0) continue;
    sum += static_cast<double>(w) * std::conj(it->second) * coeff_k;
  }
  return term.coeff * sum;
}

Complex expectation(const CoherentFrame& frame, const Occupancy& occ, const OperatorPoly& p) {
  if (p.modes() != frame.modes()) {
    throw std::invalid_argument("frame/operator dimension mismatch: " +
                                std::to_string(frame.modes()) + " vs " +
                                std::to_string(p.modes()) + " modes");
  }
  Complex sum(0.0, 0.0);
  for (const auto& term : simplify(normal_order(p), 0.0).normal_terms()) {
    sum += expectation(frame, occ, term);
  }
  return sum;
}

std::uint64_t count_contributing(int species, int body) {
  if (species < 1) throw std::invalid_argument("count_contributing: species must be >= 1");
  if (body < 0) throw std::invalid_argument("count_contributing: body must be >= 0");
  std::uint64_t count = 0;
  for (const auto& nu : compositions(body, species)) {
    const std::uint64_t k = multinomial(nu);
    count += k * k;
  }
  return count;
}

std::vector<std::pair<MultiplicityVector, MultiplicityVector>> collect_partitions(int species,
                                                                                  int body) {
  if (species < 1) throw std::invalid_argument("collect_partitions: species must be >= 1");
  if (body < 0) throw std::invalid_argument("collect_partitions: body must be >= 0");
  const auto parts = compositions(body, species);
  std::vector<std::pair<MultiplicityVector, MultiplicityVector>> out;
  out.reserve(parts.size() * parts.size());
  for (const auto& nu_bra : parts) {
    for (const auto& nu_ket : parts) out.emplace_back(nu_bra, nu_ket);
  }
  return out;
}

ClosedForm classify_two_species(const Occupancy& bra, const Occupancy& ket,
                                const NormalTerm& term) {
  if (bra.size() != 2 || ket.size() != 2 || !term.number_conserving()) return ClosedForm::Zero;
  if (total(bra) != total(ket)) return ClosedForm::Zero;
  const int shift = bra[0] - ket[0];
  if (term.body() == 1) {
    switch (shift) {
      case -1: return ClosedForm::OneBodyLowerFirst;
      case 0: return ClosedForm::OneBodyDiagonal;
      case 1: return ClosedForm::OneBodyRaiseFirst;
      default: return ClosedForm::Zero;
    }
  }
  if (term.body() == 2) {
    switch (shift) {
      case -2: return ClosedForm::TwoBodyShiftMinus2;
      case -1: return ClosedForm::TwoBodyShiftMinus1;
      case 0: return ClosedForm::TwoBodyDiagonal;
      case 1: return ClosedForm::TwoBodyShiftPlus1;
      case 2: return ClosedForm::TwoBodyShiftPlus2;
      default: return ClosedForm::Zero;
    }
  }
  return ClosedForm::Zero;
}

Complex two_species_closed(const CoherentFrame& frame, const Occupancy& bra,
                           const Occupancy& ket, const NormalTerm& term) {
  if (frame.species() != 2) {
    throw std::invalid_argument("two_species_closed: frame has " +
                                std::to_string(frame.species()) + " species, need 2");
  }
  check_occupancy(frame, bra, "bra");
  check_occupancy(frame, ket, "ket");
  check_term(frame, term);
  if (!term.number_conserving() || term.body() < 1 || term.body() > 2) {
    throw std::invalid_argument("two_species_closed: term must be a balanced 1- or 2-body product");
  }

  const double N1 = ket[0];
  const double N2 = ket[1];
  // bra side: conj(alpha_{s, r'_i}); ket side: alpha_{s, r_i}; i is 1-based
  auto c = [&](int s, int i) { return std::conj(frame.alpha(s, term.creators[i - 1])); };
  auto k = [&](int s, int i) { return frame.alpha(s, term.annihilators[i - 1]); };

  Complex value(0.0, 0.0);
  switch (classify_two_species(bra, ket, term)) {
    case ClosedForm::Zero:
      break;
    case ClosedForm::OneBodyLowerFirst:
      value = std::sqrt(N1 * (N2 + 1)) * c(1, 1) * k(0, 1);
      break;
    case ClosedForm::OneBodyDiagonal:
      value = N1 * c(0, 1) * k(0, 1) + N2 * c(1, 1) * k(1, 1);
      break;
    case ClosedForm::OneBodyRaiseFirst:
      value = std::sqrt((N1 + 1) * N2) * c(0, 1) * k(1, 1);
      break;
    case ClosedForm::TwoBodyShiftMinus2:
      value = std::sqrt(N1 * (N1 - 1) * (N2 + 2) * (N2 + 1)) * c(1, 2) * c(1, 1) * k(0, 1) *
              k(0, 2);
      break;
    case ClosedForm::TwoBodyShiftMinus1: {
      const double root = std::sqrt(N1 * (N2 + 1));
      value = (N1 - 1) * root * (c(0, 2) * c(1, 1) + c(1, 2) * c(0, 1)) * k(0, 1) * k(0, 2) +
              N2 * root * c(1, 2) * c(1, 1) * (k(1, 1) * k(0, 2) + k(0, 1) * k(1, 2));
      break;
    }
    case ClosedForm::TwoBodyDiagonal:
      value = N1 * (N1 - 1) * c(0, 2) * c(0, 1) * k(0, 1) * k(0, 2) +
              N2 * (N2 - 1) * c(1, 2) * c(1, 1) * k(1, 1) * k(1, 2) +
              N1 * N2 * (c(0, 2) * c(1, 1) + c(1, 2) * c(0, 1)) *
                  (k(0, 1) * k(1, 2) + k(1, 1) * k(0, 2));
      break;
    case ClosedForm::TwoBodyShiftPlus1: {
      const double root = std::sqrt((N1 + 1) * N2);
      value = N1 * root * c(0, 2) * c(0, 1) * (k(1, 1) * k(0, 2) + k(0, 1) * k(1, 2)) +
              (N2 - 1) * root * (c(0, 2) * c(1, 1) + c(1, 2) * c(0, 1)) * k(1, 1) * k(1, 2);
      break;
    }
    case ClosedForm::TwoBodyShiftPlus2:
      value = std::sqrt((N1 + 2) * (N1 + 1) * N2 * (N2 - 1)) * c(0, 2) * c(0, 1) * k(1, 1) *
              k(1, 2);
      break;
  }
  return term.coeff * value;
}

}  // namespace cohstate
