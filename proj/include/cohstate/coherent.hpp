#pragma once

// Matrix elements of normal-ordered boson operators between multi-species
// coherent states
//
//   |N_1 ... N_S> = prod_s (B_s^dagger)^{N_s} / sqrt(N_s!) |0>,
//   B_s^dagger    = sum_i alpha_{s,i} b_i^dagger,
//
// for an orthonormal set of species rows alpha_{s,.}.
//
// Conventions: modes are 1-based (as in OperatorPoly); species are 0-based
// positions in an Occupancy vector.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cohstate/algebra.hpp"

namespace cohstate {

inline constexpr double kFrameTolerance = 1e-10;

/// Occupation numbers (N_1, ..., N_S) of the coherent species.
using Occupancy = std::vector<int>;

/// nu_s = number of summation indices t_i equal to species s. Sums to m.
using MultiplicityVector = std::vector<int>;

class FrameError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class CoherentFrame {
 public:
  /// Validates and builds a frame from S rows of n coefficients each.
  /// Throws FrameError if S > n, rows are ragged, or the Gram matrix differs
  /// from the identity by more than `tol` (the message reports the deviation).
  static CoherentFrame validate(const std::vector<std::vector<Complex>>& rows,
                                double tol = kFrameTolerance);

  int modes() const { return modes_; }
  int species() const { return species_; }

  /// alpha_{s, mode}; s in [0, S), mode in [1, n].
  Complex alpha(int s, int mode) const {
    return alpha_[static_cast<std::size_t>(s * modes_ + mode - 1)];
  }

  std::vector<std::vector<Complex>> rows() const;

 private:
  CoherentFrame(int modes, int species, std::vector<Complex> alpha)
      : modes_(modes), species_(species), alpha_(std::move(alpha)) {}

  int modes_;
  int species_;
  std::vector<Complex> alpha_;
};

inline CoherentFrame validate_frame(const std::vector<std::vector<Complex>>& rows,
                                    double tol = kFrameTolerance) {
  return CoherentFrame::validate(rows, tol);
}

/// Largest |G - I| entry of the Gram matrix G_{s's} = sum_i conj(a_{s'i}) a_{si}.
double gram_deviation(const std::vector<std::vector<Complex>>& rows);

/// (prod_i b_{modes_i}) |occ>, expanded over the reduced occupancies
/// occ - nu. Over-annihilated species are omitted. Sorted by occupancy.
std::vector<std::pair<Occupancy, Complex>> annihilate_product(const CoherentFrame& frame,
                                                              const Occupancy& occ,
                                                              std::span<const int> modes);

enum class EvalMode {
  Auto,     ///< Direct when S^(m'+m) <= 10^6, otherwise Grouped.
  Direct,   ///< literal double sum over (t', t) index tuples
  Grouped,  ///< sum over (nu', nu) multiplicity groups with collected coefficients
};

/// Instrumentation for the direct double sum.
struct EvalStats {
  std::uint64_t visited_pairs = 0;       ///< (t', t) pairs enumerated
  std::uint64_t delta_pairs = 0;         ///< pairs passing the occupancy delta constraint
  std::uint64_t contributing_pairs = 0;  ///< ...with nonzero falling-factorial weight
  std::uint64_t groups = 0;              ///< (nu', nu) groups examined (Grouped mode)
};

/// <bra| term |ket>. Creator and annihilator counts may differ; the result
/// vanishes unless N' - m' = N - m. Zero-body terms give coeff * delta(bra, ket).
Complex matrix_element(const CoherentFrame& frame, const Occupancy& bra, const Occupancy& ket,
                       const NormalTerm& term, EvalMode mode = EvalMode::Auto,
                       EvalStats* stats = nullptr);

/// Normal orders p, then sums matrix_element over its terms.
Complex matrix_element_poly(const CoherentFrame& frame, const Occupancy& bra,
                            const Occupancy& ket, const OperatorPoly& p,
                            EvalMode mode = EvalMode::Auto);

/// <occ| term |occ> via the diagonal simplification delta(nu', nu) N_s^(nu_s).
Complex expectation(const CoherentFrame& frame, const Occupancy& occ, const NormalTerm& term);
Complex expectation(const CoherentFrame& frame, const Occupancy& occ, const OperatorPoly& p);

/// Number of (t', t) tuples surviving the delta constraint in a diagonal
/// m-body matrix element with S species: sum over nu of multinomial(m; nu)^2.
std::uint64_t count_contributing(int species, int body);

/// All (nu', nu) pairs of multiplicity vectors of m over S bins.
std::vector<std::pair<MultiplicityVector, MultiplicityVector>> collect_partitions(int species,
                                                                                  int body);

/// Which closed two-species form applies to a given (bra, ket, term).
enum class ClosedForm {
  Zero,                 ///< outside every listed case
  OneBodyLowerFirst,    ///< <(N1-1)(N2+1)| b'^ b |N1 N2>
  OneBodyDiagonal,      ///< <N1 N2| b'^ b |N1 N2>
  OneBodyRaiseFirst,    ///< <(N1+1)(N2-1)| b'^ b |N1 N2>
  TwoBodyShiftMinus2,   ///< <(N1-2)(N2+2)| ...
  TwoBodyShiftMinus1,   ///< <(N1-1)(N2+1)| ...
  TwoBodyDiagonal,      ///< <N1 N2| ...
  TwoBodyShiftPlus1,    ///< <(N1+1)(N2-1)| ...
  TwoBodyShiftPlus2,    ///< <(N1+2)(N2-2)| ...
};

ClosedForm classify_two_species(const Occupancy& bra, const Occupancy& ket,
                                const NormalTerm& term);

/// Closed-form one- and two-body matrix elements for S = 2 frames. Throws
/// std::invalid_argument for S != 2 or for terms that are not balanced
/// one- or two-body products.
Complex two_species_closed(const CoherentFrame& frame, const Occupancy& bra,
                           const Occupancy& ket, const NormalTerm& term);

}  // namespace cohstate
