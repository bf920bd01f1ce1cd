#pragma once

// Occupation-number basis for n modes and N bosons, exact operator matrices,
// exact coherent-state expansions and the brute-force matrix element oracle.

#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "cohstate/algebra.hpp"
#include "cohstate/coherent.hpp"

namespace cohstate {

inline constexpr std::size_t kOracleBasisLimit = 100000;

/// Selects occupation vectors with sum_i weights_i * n_i == target.
struct LinearConstraint {
  std::vector<int> weights;
  int target = 0;

  bool accepts(std::span<const int> state) const;
};

/// Immutable, cheap to copy (shared storage). States are ordered
/// lexicographically descending: (N,0,..,0) first, (0,..,0,N) last.
class FockBasis {
 public:
  FockBasis(int modes, int bosons, std::optional<LinearConstraint> constraint = std::nullopt);

  int modes() const { return data_->modes; }
  int bosons() const { return data_->bosons; }
  std::size_t size() const { return data_->states.size(); }
  bool constrained() const { return data_->constraint.has_value(); }
  const std::optional<LinearConstraint>& constraint() const { return data_->constraint; }

  const std::vector<int>& state(std::size_t index) const { return data_->states[index]; }
  const std::vector<std::vector<int>>& states() const { return data_->states; }
  std::optional<std::size_t> index_of(const std::vector<int>& state) const;

 private:
  struct Data {
    int modes;
    int bosons;
    std::optional<LinearConstraint> constraint;
    std::vector<std::vector<int>> states;
    std::map<std::vector<int>, std::size_t> index;
  };
  std::shared_ptr<const Data> data_;
};

inline FockBasis enumerate_basis(int modes, int bosons,
                                 std::optional<LinearConstraint> constraint = std::nullopt) {
  return FockBasis(modes, bosons, std::move(constraint));
}

struct StateVector {
  FockBasis basis;
  Eigen::VectorXcd amplitudes;

  double norm() const { return amplitudes.norm(); }
};

/// Complex sparse matrix (row-major) acting between two Fock bases.
class SparseMatrix {
 public:
  using Storage = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

  SparseMatrix() = default;
  explicit SparseMatrix(Storage m) : m_(std::move(m)) {}

  Eigen::Index rows() const { return m_.rows(); }
  Eigen::Index cols() const { return m_.cols(); }
  const Storage& storage() const { return m_; }

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const { return m_ * v; }
  Eigen::MatrixXcd to_dense() const { return Eigen::MatrixXcd(m_); }
  SparseMatrix adjoint() const { return SparseMatrix(Storage(m_.adjoint())); }
  Complex coeff(Eigen::Index row, Eigen::Index col) const { return m_.coeff(row, col); }

  /// max |A_ij - conj(A_ji)|; infinity for non-square matrices.
  double hermiticity_deviation() const;

  /// One "row col re im" line per stored entry, 0-based indices, row-major.
  void write_coordinate(std::ostream& out) const;

 private:
  Storage m_;
};

enum class OutsideTarget {
  Reject,  ///< throw std::domain_error
  Drop,    ///< discard the contribution
};

/// Matrix of p mapping states of `from` into `to`. Each product is applied
/// factor by factor (rightmost first), so p need not be normal ordered.
SparseMatrix matrix_between(const OperatorPoly& p, const FockBasis& from, const FockBasis& to,
                            OutsideTarget outside = OutsideTarget::Reject);

/// matrix_between(p, basis, basis); throws std::domain_error when p leaves the basis.
SparseMatrix matrix_of(const OperatorPoly& p, const FockBasis& basis);

/// Exact expansion of prod_s (B_s^dagger)^{N_s}/sqrt(N_s!)|0> in an
/// unconstrained basis whose boson number equals sum_s N_s.
StateVector coherent_vector(const CoherentFrame& frame, const Occupancy& occ,
                            const FockBasis& basis);

/// <bra| p |ket> by explicit Fock-space expansion of both coherent states.
/// Throws std::length_error when either basis exceeds `basis_limit`.
Complex me_oracle(const CoherentFrame& frame, const Occupancy& bra, const Occupancy& ket,
                  const OperatorPoly& p, std::size_t basis_limit = kOracleBasisLimit);

struct Eigensystem {
  Eigen::VectorXd values;    ///< ascending
  Eigen::MatrixXcd vectors;  ///< columns
};

/// Full dense diagonalization. Throws std::invalid_argument if the matrix is
/// not Hermitian within `tol`.
Eigensystem eigensolve(const SparseMatrix& h, double tol = 1e-10);

}  // namespace cohstate
