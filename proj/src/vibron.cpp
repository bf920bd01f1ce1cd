#include "cohstate/vibron.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "cohstate/parallel.hpp"

namespace cohstate::vibron {

namespace {

const double kSqrt2 = std::sqrt(2.0);

void check_bosons(int N) {
  if (N < 0 || N > kMaxBosons) {
    throw std::out_of_range("boson number N = " + std::to_string(N) + " outside [0, " +
                            std::to_string(kMaxBosons) + "]");
  }
}

void check_excitation(int N, int Nx) {
  if (N < 0) throw std::out_of_range("boson number N must be >= 0");
  if (Nx < 0 || Nx > N) {
    throw std::out_of_range("excitation number N_x = " + std::to_string(Nx) + " outside [0, " +
                            std::to_string(N) + "]");
  }
}

int max_v(int N, int l) { return (N - std::abs(l)) / 2; }

LinearConstraint angular_momentum(int l) { return {{0, 1, -1}, l}; }

// Intensity columns: blank when the transition's levels do not exist.
Cell maybe(bool exists, double value) { return exists ? Cell(value) : Cell(std::monostate{}); }

}  // namespace

Operators build_operators() {
  Operators ops;
  const int n = kModes;
  ops.l = bilinear(n, kTauPlus, kTauPlus) - bilinear(n, kTauMinus, kTauMinus);
  ops.d_plus = kSqrt2 * (bilinear(n, kTauPlus, kSigma) - bilinear(n, kSigma, kTauMinus));
  ops.d_minus = -kSqrt2 * (bilinear(n, kTauMinus, kSigma) - bilinear(n, kSigma, kTauPlus));
  ops.q_plus = bilinear(n, kTauPlus, kTauMinus, kSqrt2);
  ops.q_minus = bilinear(n, kTauMinus, kTauPlus, kSqrt2);
  ops.w2 = 0.5 * (ops.d_plus * ops.d_minus + ops.d_minus * ops.d_plus) + ops.l * ops.l;
  ops.hamiltonian = -1.0 * ops.w2;
  return ops;
}

const Operators& operators() {
  static const Operators ops = build_operators();
  return ops;
}

const OperatorPoly& transition_operator(TransitionOperator op) {
  const Operators& ops = operators();
  switch (op) {
    case TransitionOperator::DPlus: return ops.d_plus;
    case TransitionOperator::DMinus: return ops.d_minus;
    case TransitionOperator::QPlus: return ops.q_plus;
    case TransitionOperator::QMinus: return ops.q_minus;
  }
  throw std::invalid_argument("unknown transition operator");
}

int angular_momentum_change(TransitionOperator op) {
  switch (op) {
    case TransitionOperator::DPlus: return 1;
    case TransitionOperator::DMinus: return -1;
    case TransitionOperator::QPlus: return 2;
    case TransitionOperator::QMinus: return -2;
  }
  throw std::invalid_argument("unknown transition operator");
}

double exact_energy(int N, int v, int l) {
  if (N < 0) throw std::out_of_range("boson number N must be >= 0");
  if (v < 0 || 2 * v > N) {
    throw std::out_of_range("v = " + std::to_string(v) + " outside [0, N/2] for N = " +
                            std::to_string(N));
  }
  if (std::abs(l) > N - 2 * v) {
    throw std::out_of_range("|l| = " + std::to_string(std::abs(l)) + " exceeds N - 2v = " +
                            std::to_string(N - 2 * v));
  }
  const double n = N;
  return -n * (n + 1) + 4.0 * v * ((n + 0.5) - v);
}

Spectrum::Spectrum(int N) : N_(N), full_(kModes, (check_bosons(N), N)) {
  const OperatorPoly h = simplify(normal_order(operators().hamiltonian));
  blocks_.resize(static_cast<std::size_t>(2 * N + 1),
                 Block{FockBasis(kModes, 0), Eigensystem{}, {}});
  parallel_for(blocks_.size(), [&](std::size_t k) {
    const int l = static_cast<int>(k) - N;
    FockBasis basis(kModes, N, angular_momentum(l));
    Eigensystem eig = eigensolve(matrix_of(h, basis));
    std::vector<std::size_t> full_index;
    full_index.reserve(basis.size());
    for (const auto& s : basis.states()) full_index.push_back(*full_.index_of(s));
    blocks_[k] = Block{std::move(basis), std::move(eig), std::move(full_index)};
  });
  // Energies rise with v at fixed l, so ascending eigenvalue order labels v.
  for (int v = 0; 2 * v <= N; ++v) {
    for (int l = -(N - 2 * v); l <= N - 2 * v; ++l) {
      levels_.push_back({N, v, l, block(l).eigen.values[v]});
    }
  }
}

const Spectrum::Block& Spectrum::block(int l) const {
  if (std::abs(l) > N_) {
    throw std::out_of_range("l = " + std::to_string(l) + " outside [-N, N]");
  }
  return blocks_[static_cast<std::size_t>(l + N_)];
}

const FockBasis& Spectrum::block_basis(int l) const { return block(l).basis; }

double Spectrum::energy(int v, int l) const {
  const Block& b = block(l);
  if (v < 0 || v > max_v(N_, l)) {
    throw std::out_of_range("no level with v = " + std::to_string(v) + ", l = " +
                            std::to_string(l));
  }
  return b.eigen.values[v];
}

StateVector Spectrum::state(int v, int l) const {
  const Block& b = block(l);
  if (v < 0 || v > max_v(N_, l)) {
    throw std::out_of_range("no level with v = " + std::to_string(v) + ", l = " +
                            std::to_string(l));
  }
  return StateVector{b.basis, b.eigen.vectors.col(v)};
}

Eigen::VectorXcd Spectrum::embed(const StateVector& state) const {
  if (!state.basis.constraint()) throw std::invalid_argument("embed: expected an l-block state");
  const Block& b = block(state.basis.constraint()->target);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(full_.size()));
  for (std::size_t k = 0; k < b.full_index.size(); ++k) {
    out[static_cast<Eigen::Index>(b.full_index[k])] = state.amplitudes[static_cast<Eigen::Index>(k)];
  }
  return out;
}

double Spectrum::max_relative_deviation() const {
  double dev = 0.0;
  for (const Level& lv : levels_) {
    const double exact = exact_energy(lv.N, lv.v, lv.l);
    dev = std::max(dev, std::abs(lv.energy - exact) / std::max(1.0, std::abs(exact)));
  }
  return dev;
}

Spectrum spectrum_exact(int N) { return Spectrum(N); }

double exact_transition(const Spectrum& spectrum, int v_i, int l_i, int v_f, int l_f,
                        TransitionOperator op) {
  const StateVector initial = spectrum.state(v_i, l_i);
  const StateVector final_state = spectrum.state(v_f, l_f);
  // T maps the initial l-block into the full basis, so the selection rule is
  // a consequence of the overlap rather than an assumption.
  const SparseMatrix t = matrix_between(transition_operator(op), initial.basis,
                                        spectrum.full_basis());
  const Complex amp = spectrum.embed(final_state).dot(t.apply(initial.amplitudes));
  return std::norm(amp);
}

double exact_transition(int N, int v_i, int l_i, int v_f, int l_f, TransitionOperator op) {
  return exact_transition(Spectrum(N), v_i, l_i, v_f, l_f, op);
}

CoherentFrame variational_frame(double r) {
  const double s = 1.0 / std::sqrt(1.0 + r * r);
  const double h = 1.0 / kSqrt2;
  // sigma, tau_+, tau_- components; tau_x = (tau_- - tau_+)/sqrt2
  return CoherentFrame::validate({{s, -r * h * s, r * h * s}, {-r * s, -h * s, h * s}});
}

Occupancy variational_occupancy(int N, int Nx) {
  check_excitation(N, Nx);
  return {N - Nx, Nx};
}

double cs_w2(int N, int Nx, double r) {
  check_excitation(N, Nx);
  const double n = N;
  const double x = Nx;
  const double q = 1.0 + r * r;
  return 2.0 * (n + x * (n - x)) + 4.0 / (q * q) * (n * (n - 1) - 6.0 * x * (n - x)) * r * r;
}

double variational_energy(int N, int Nx, double r) {
  return expectation(variational_frame(r), variational_occupancy(N, Nx), operators().hamiltonian)
      .real();
}

double minimize_r(int N) {
  if (N < 2) throw std::out_of_range("minimize_r needs N >= 2");
  constexpr double lo = 0.0;
  constexpr double hi = 10.0;
  constexpr double tol = 1e-8;
  auto energy = [N](double r) { return variational_energy(N, 0, r); };

  // Unimodality scan: successive differences may change sign at most once,
  // from falling to rising.
  constexpr int samples = 200;
  const double scale = std::abs(energy(1.0)) + 1.0;
  double prev = energy(hi / samples);
  bool rising = false;
  for (int k = 2; k <= samples; ++k) {
    const double e = energy(hi * k / samples);
    const double diff = e - prev;
    if (diff > 1e-12 * scale) rising = true;
    if (rising && diff < -1e-12 * scale) {
      throw std::runtime_error("variational energy is not unimodal in r on (0, 10]");
    }
    prev = e;
  }

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = energy(c);
  double fd = energy(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = energy(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = energy(d);
    }
  }
  return 0.5 * (a + b);
}

double cs_energy(int N, int Nx) {
  check_excitation(N, Nx);
  const double n = N;
  const double x = Nx;
  return -n * (n + 1) + 4.0 * x * (n - x);
}

double cs_transition(int N, int Nx, int delta, Multipole op, double r) {
  check_excitation(N, Nx);
  if (delta != 0 && delta != -1) throw std::invalid_argument("delta must be 0 or -1");
  if (Nx + delta < 0) throw std::out_of_range("N_x + delta must be >= 0");
  const double n = N;
  const double x = Nx;
  const double q = 1.0 + r * r;
  if (delta == 0) {
    if (op == Multipole::Dipole) return -2.0 * (n - 2.0 * x) * r / q;
    return -(x + (n - x) * r * r) / (kSqrt2 * q);
  }
  const double root = std::sqrt((n - x + 1.0) * x);
  if (op == Multipole::Dipole) return -root * (1.0 - r * r) / q;
  return -root * r / (kSqrt2 * q);
}

CompareReport compare_report(int N) { return compare_report(Spectrum(N)); }

CompareReport compare_report(const Spectrum& spectrum) {
  const int N = spectrum.bosons();
  const double n2 = static_cast<double>(N) * N;
  const double scale = n2 > 0 ? 1.0 / n2 : 1.0;
  using TO = TransitionOperator;

  CompareReport report;
  report.energies.header = {"v", "exact", "coherent", "exact_rescaled", "coherent_rescaled"};
  report.dipole.header = {"v",
                          "exact",
                          "coherent",
                          "exact_rescaled",
                          "coherent_rescaled",
                          "inter_exact",
                          "inter_coherent",
                          "inter_exact_rescaled",
                          "inter_coherent_rescaled"};
  report.quadrupole.header = {"v",
                              "exact",
                              "coherent",
                              "exact_rescaled",
                              "coherent_rescaled",
                              "inter_exact_2to0",
                              "inter_exact_0to2",
                              "inter_coherent",
                              "inter_exact_2to0_rescaled",
                              "inter_exact_0to2_rescaled",
                              "inter_coherent_rescaled"};

  const int v_max = N / 2;
  std::vector<std::vector<Cell>> dipole_rows(static_cast<std::size_t>(v_max + 1));
  std::vector<std::vector<Cell>> quad_rows(static_cast<std::size_t>(v_max + 1));
  parallel_for(static_cast<std::size_t>(v_max + 1), [&](std::size_t k) {
    const int v = static_cast<int>(k);
    const int omega = N - 2 * v;
    const bool has_l1 = omega >= 1;
    const bool has_l2 = omega >= 2;
    const bool has_lower = v >= 1;

    // intra (v,1)->(v,0) via D-, inter (v,1)->(v-1,0)
    const double d_intra = has_l1 ? exact_transition(spectrum, v, 1, v, 0, TO::DMinus) : 0.0;
    const double d_inter =
        has_l1 && has_lower ? exact_transition(spectrum, v, 1, v - 1, 0, TO::DMinus) : 0.0;
    const double d_cs = std::pow(cs_transition(N, v, 0, Multipole::Dipole, 1.0), 2);
    const double d_cs_inter =
        has_lower ? std::pow(cs_transition(N, v, -1, Multipole::Dipole, 1.0), 2) : 0.0;
    dipole_rows[k] = {std::int64_t{v},
                      maybe(has_l1, d_intra),
                      d_cs,
                      maybe(has_l1, d_intra * scale),
                      d_cs * scale,
                      maybe(has_l1 && has_lower, d_inter),
                      maybe(has_lower, d_cs_inter),
                      maybe(has_l1 && has_lower, d_inter * scale),
                      maybe(has_lower, d_cs_inter * scale)};

    // intra (v,2)->(v,0) via Q-, inter (v,2)->(v-1,0) via Q- and (v,0)->(v-1,2) via Q+
    const double q_intra = has_l2 ? exact_transition(spectrum, v, 2, v, 0, TO::QMinus) : 0.0;
    const double q_20 =
        has_l2 && has_lower ? exact_transition(spectrum, v, 2, v - 1, 0, TO::QMinus) : 0.0;
    const double q_02 = has_lower ? exact_transition(spectrum, v, 0, v - 1, 2, TO::QPlus) : 0.0;
    const double q_cs = std::pow(cs_transition(N, v, 0, Multipole::Quadrupole, 1.0), 2);
    const double q_cs_inter =
        has_lower ? std::pow(cs_transition(N, v, -1, Multipole::Quadrupole, 1.0), 2) : 0.0;
    quad_rows[k] = {std::int64_t{v},
                    maybe(has_l2, q_intra),
                    q_cs,
                    maybe(has_l2, q_intra * scale),
                    q_cs * scale,
                    maybe(has_l2 && has_lower, q_20),
                    maybe(has_lower, q_02),
                    maybe(has_lower, q_cs_inter),
                    maybe(has_l2 && has_lower, q_20 * scale),
                    maybe(has_lower, q_02 * scale),
                    maybe(has_lower, q_cs_inter * scale)};
  });

  for (int v = 0; v <= v_max; ++v) {
    const double exact = spectrum.energy(v, 0);
    const double cs = cs_energy(N, v);
    report.energies.rows.push_back({std::int64_t{v}, exact, cs, exact * scale, cs * scale});
  }
  report.dipole.rows = std::move(dipole_rows);
  report.quadrupole.rows = std::move(quad_rows);
  return report;
}

}  // namespace cohstate::vibron
