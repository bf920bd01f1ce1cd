#pragma once

// Two-dimensional vibron model (U(3) with bosons sigma, tau_+, tau_-) in its
// SO(3) dynamical-symmetry limit: exact spectra and transition strengths by
// diagonalization, and their excited-coherent-state estimates.
//
// Mode mapping: sigma -> 1, tau_+ -> 2, tau_- -> 3.

#include <vector>

#include "cohstate/algebra.hpp"
#include "cohstate/coherent.hpp"
#include "cohstate/fock.hpp"
#include "cohstate/table.hpp"

namespace cohstate::vibron {

inline constexpr int kModes = 3;
inline constexpr int kSigma = 1;
inline constexpr int kTauPlus = 2;
inline constexpr int kTauMinus = 3;
inline constexpr int kMaxBosons = 200;

struct Operators {
  OperatorPoly l{kModes};        ///< tau_+^ tau_+ - tau_-^ tau_-
  OperatorPoly d_plus{kModes};   ///< +sqrt2 (tau_+^ sigma - sigma^ tau_-)
  OperatorPoly d_minus{kModes};  ///< -sqrt2 (tau_-^ sigma - sigma^ tau_+)
  OperatorPoly q_plus{kModes};   ///< sqrt2 tau_+^ tau_-
  OperatorPoly q_minus{kModes};  ///< sqrt2 tau_-^ tau_+
  OperatorPoly w2{kModes};       ///< (D+ D- + D- D+)/2 + l^2, SO(3) Casimir
  OperatorPoly hamiltonian{kModes};  ///< -W^2
};

Operators build_operators();

/// Shared instance of build_operators().
const Operators& operators();

enum class TransitionOperator { DPlus, DMinus, QPlus, QMinus };

const OperatorPoly& transition_operator(TransitionOperator op);

/// Units of angular momentum added by the operator (+1, -1, +2, -2).
int angular_momentum_change(TransitionOperator op);

struct Level {
  int N = 0;
  int v = 0;
  int l = 0;
  double energy = 0.0;
};

/// -N(N+1) + 4v[(N + 1/2) - v]; throws std::out_of_range outside
/// 0 <= v <= N/2, |l| <= N - 2v.
double exact_energy(int N, int v, int l);

/// Exact SO(3)-limit spectrum, diagonalized block by block in l.
class Spectrum {
 public:
  /// Throws std::out_of_range for N < 0 or N > kMaxBosons.
  explicit Spectrum(int N);

  int bosons() const { return N_; }

  /// All C(N+2, 2) levels ordered by (v, l).
  const std::vector<Level>& levels() const { return levels_; }

  double energy(int v, int l) const;

  /// Eigenvector of level (v, l) in the l-block basis. The overall phase is
  /// whatever the eigensolver returned.
  StateVector state(int v, int l) const;

  const FockBasis& block_basis(int l) const;
  const FockBasis& full_basis() const { return full_; }

  /// Maps a state of the l-block into the full N-boson basis.
  Eigen::VectorXcd embed(const StateVector& state) const;

  /// max over levels of |E_numeric - exact_energy| / max(1, |exact_energy|).
  double max_relative_deviation() const;

 private:
  struct Block {
    FockBasis basis;
    Eigensystem eigen;
    std::vector<std::size_t> full_index;
  };

  const Block& block(int l) const;

  int N_;
  FockBasis full_;
  std::vector<Block> blocks_;  // index l + N
  std::vector<Level> levels_;
};

Spectrum spectrum_exact(int N);

/// |<v_f l_f| T |v_i l_i>|^2 between diagonalized eigenstates. Throws
/// std::out_of_range if either level does not exist.
double exact_transition(const Spectrum& spectrum, int v_i, int l_i, int v_f, int l_f,
                        TransitionOperator op);
double exact_transition(int N, int v_i, int l_i, int v_f, int l_f, TransitionOperator op);

/// Condensate (row 0) and excitation (row 1) bosons
///   B_c^ = (sigma^ + r tau_x^)/sqrt(1+r^2),  B_x^ = (-r sigma^ + tau_x^)/sqrt(1+r^2)
/// with tau_x^ = (tau_-^ - tau_+^)/sqrt2, written in (sigma, tau_+, tau_-) modes.
CoherentFrame variational_frame(double r);

/// (N - N_x, N_x); throws std::out_of_range unless 0 <= N_x <= N.
Occupancy variational_occupancy(int N, int Nx);

/// Closed form of <N N_x; r| W^2 |N N_x; r>.
double cs_w2(int N, int Nx, double r);

/// <N N_x; r| H |N N_x; r> through the general coherent engine.
double variational_energy(int N, int Nx, double r);

/// Golden-section minimum of variational_energy(N, 0, r) over r in (0, 10],
/// tolerance 1e-8. Throws std::runtime_error if a grid scan shows more than
/// one local minimum.
double minimize_r(int N);

/// -N(N+1) + 4 N_x (N - N_x), the r = 1 coherent estimate.
double cs_energy(int N, int Nx);

enum class Multipole { Dipole, Quadrupole };

/// Closed-form <N (N_x + delta); r| T |N N_x; r> for delta in {0, -1}. The
/// value is the same for the + and - components of T.
double cs_transition(int N, int Nx, int delta, Multipole op, double r);

struct CompareReport {
  Table energies;
  Table dipole;
  Table quadrupole;
};

/// Exact vs coherent-state energies and transition intensities per v, with
/// 1/N^2-rescaled copies of every observable column.
CompareReport compare_report(int N);
CompareReport compare_report(const Spectrum& spectrum);

}  // namespace cohstate::vibron
