#include "cohstate/fock.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "cohstate/combinatorics.hpp"

namespace cohstate {

namespace {

// Applies a product of ladder operators (rightmost first) to an occupation
// vector in place; returns the accumulated amplitude, 0 if annihilated.
double apply_product(const std::vector<Ladder>& factors, std::vector<int>& state) {
  // integer product first, one square root at the end
  double squared = 1.0;
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    int& n = state[static_cast<std::size_t>(it->mode - 1)];
    if (it->dagger) {
      squared *= static_cast<double>(n + 1);
      ++n;
    } else {
      if (n == 0) return 0.0;
      squared *= static_cast<double>(n);
      --n;
    }
  }
  return std::sqrt(squared);
}

}  // namespace

bool LinearConstraint::accepts(std::span<const int> state) const {
  if (weights.size() != state.size()) return false;
  return std::inner_product(weights.begin(), weights.end(), state.begin(), 0) == target;
}

FockBasis::FockBasis(int modes, int bosons, std::optional<LinearConstraint> constraint) {
  if (modes < 1) throw std::invalid_argument("Fock basis needs at least one mode");
  if (bosons < 0) throw std::invalid_argument("Fock basis boson number must be >= 0");
  if (constraint && static_cast<int>(constraint->weights.size()) != modes) {
    throw std::invalid_argument("constraint has " + std::to_string(constraint->weights.size()) +
                                " weights for " + std::to_string(modes) + " modes");
  }
  auto data = std::make_shared<Data>();
  data->modes = modes;
  data->bosons = bosons;
  data->constraint = std::move(constraint);
  for (auto& s : compositions(bosons, modes)) {
    if (data->constraint && !data->constraint->accepts(s)) continue;
    data->index.emplace(s, data->states.size());
    data->states.push_back(std::move(s));
  }
  data_ = std::move(data);
}

std::optional<std::size_t> FockBasis::index_of(const std::vector<int>& state) const {
  const auto it = data_->index.find(state);
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

double SparseMatrix::hermiticity_deviation() const {
  if (m_.rows() != m_.cols()) return std::numeric_limits<double>::infinity();
  const Storage diff = m_ - Storage(m_.adjoint());
  double dev = 0.0;
  for (Eigen::Index r = 0; r < diff.outerSize(); ++r) {
    for (Storage::InnerIterator it(diff, r); it; ++it) dev = std::max(dev, std::abs(it.value()));
  }
  return dev;
}

void SparseMatrix::write_coordinate(std::ostream& out) const {
  for (Eigen::Index r = 0; r < m_.outerSize(); ++r) {
    for (Storage::InnerIterator it(m_, r); it; ++it) {
      fmt::print(out, "{} {} {:.15g} {:.15g}\n", it.row(), it.col(), it.value().real(),
                 it.value().imag());
    }
  }
}

SparseMatrix matrix_between(const OperatorPoly& p, const FockBasis& from, const FockBasis& to,
                            OutsideTarget outside) {
  if (p.modes() != from.modes() || p.modes() != to.modes()) {
    throw std::invalid_argument("operator/basis dimension mismatch");
  }
  std::vector<Eigen::Triplet<Complex>> entries;
  std::vector<int> work;
  for (std::size_t col = 0; col < from.size(); ++col) {
    for (const auto& term : p.terms()) {
      work = from.state(col);
      const double amp = apply_product(term.factors, work);
      if (amp == 0.0) continue;
      const auto row = to.index_of(work);
      if (!row) {
        if (outside == OutsideTarget::Drop) continue;
        throw std::domain_error("operator leaves the target basis (state index " +
                                std::to_string(col) + ")");
      }
      entries.emplace_back(static_cast<int>(*row), static_cast<int>(col), term.coeff * amp);
    }
  }
  SparseMatrix::Storage m(static_cast<Eigen::Index>(to.size()),
                          static_cast<Eigen::Index>(from.size()));
  m.setFromTriplets(entries.begin(), entries.end());
  m.prune(Complex(0.0, 0.0));
  return SparseMatrix(std::move(m));
}

SparseMatrix matrix_of(const OperatorPoly& p, const FockBasis& basis) {
  return matrix_between(p, basis, basis, OutsideTarget::Reject);
}

StateVector coherent_vector(const CoherentFrame& frame, const Occupancy& occ,
                            const FockBasis& basis) {
  if (basis.constrained()) {
    throw std::invalid_argument("coherent_vector needs an unconstrained basis");
  }
  if (basis.modes() != frame.modes()) {
    throw std::invalid_argument("coherent_vector: basis/frame dimension mismatch");
  }
  if (static_cast<int>(occ.size()) != frame.species()) {
    throw std::invalid_argument("coherent_vector: occupancy/frame species mismatch");
  }
  const int N = std::accumulate(occ.begin(), occ.end(), 0);
  if (N != basis.bosons()) {
    throw std::invalid_argument("coherent_vector: occupancy total " + std::to_string(N) +
                                " differs from basis boson number " +
                                std::to_string(basis.bosons()));
  }

  // Repeated application of B_s^dagger = sum_i alpha_{s,i} b_i^dagger to |0>.
  std::map<std::vector<int>, Complex> current{{std::vector<int>(frame.modes(), 0), 1.0}};
  double norm_factor = 1.0;
  for (int s = 0; s < frame.species(); ++s) {
    for (int k = 0; k < occ[static_cast<std::size_t>(s)]; ++k) {
      std::map<std::vector<int>, Complex> next;
      for (const auto& [state, amp] : current) {
        for (int i = 1; i <= frame.modes(); ++i) {
          const Complex a = frame.alpha(s, i);
          if (a == Complex(0.0, 0.0)) continue;
          std::vector<int> raised = state;
          const double root = std::sqrt(static_cast<double>(++raised[static_cast<std::size_t>(i - 1)]));
          next[std::move(raised)] += amp * a * root;
        }
      }
      current = std::move(next);
      norm_factor *= std::sqrt(static_cast<double>(k + 1));
    }
  }

  StateVector out{basis, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()))};
  for (const auto& [state, amp] : current) {
    const auto idx = basis.index_of(state);
    if (!idx) throw std::logic_error("coherent_vector: expansion left the basis");
    out.amplitudes[static_cast<Eigen::Index>(*idx)] = amp / norm_factor;
  }
  return out;
}

Complex me_oracle(const CoherentFrame& frame, const Occupancy& bra, const Occupancy& ket,
                  const OperatorPoly& p, std::size_t basis_limit) {
  const int n_bra = std::accumulate(bra.begin(), bra.end(), 0);
  const int n_ket = std::accumulate(ket.begin(), ket.end(), 0);
  for (int N : {n_bra, n_ket}) {
    if (binomial(N + frame.modes() - 1, frame.modes() - 1) > basis_limit) {
      throw std::length_error("me_oracle: Fock basis for N = " + std::to_string(N) +
                              " exceeds the limit of " + std::to_string(basis_limit) + " states");
    }
  }
  const FockBasis bra_basis(frame.modes(), n_bra);
  const FockBasis ket_basis(frame.modes(), n_ket);
  const StateVector bra_vec = coherent_vector(frame, bra, bra_basis);
  const StateVector ket_vec = coherent_vector(frame, ket, ket_basis);
  const SparseMatrix m = matrix_between(normal_order(p), ket_basis, bra_basis, OutsideTarget::Drop);
  return bra_vec.amplitudes.dot(m.apply(ket_vec.amplitudes));
}

Eigensystem eigensolve(const SparseMatrix& h, double tol) {
  const double dev = h.hermiticity_deviation();
  if (!(dev <= tol)) {
    throw std::invalid_argument("eigensolve: matrix is not Hermitian (deviation " +
                                std::to_string(dev) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.to_dense());
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolve: no convergence");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace cohstate
