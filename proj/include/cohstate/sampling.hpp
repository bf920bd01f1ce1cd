#pragma once

// Random instances for oracle cross-checks.

#include <random>

#include "cohstate/algebra.hpp"
#include "cohstate/coherent.hpp"

namespace cohstate {

using Rng = std::mt19937_64;

/// Orthonormal rows from the QR factorization of a complex Gaussian matrix;
/// every coefficient is nonzero with probability one.
CoherentFrame random_frame(Rng& rng, int species, int modes);

/// Uniformly random occupancy of `species` entries summing to `total`.
Occupancy random_occupancy(Rng& rng, int species, int total);

/// Random sorted mode lists and a complex coefficient of modulus in [0.5, 1.5].
NormalTerm random_term(Rng& rng, int modes, int creators, int annihilators);

/// Sum of `terms` random products of 1..max_degree ladder operators in
/// arbitrary order (not normal ordered).
OperatorPoly random_poly(Rng& rng, int modes, int terms, int max_degree);

struct OracleCase {
  CoherentFrame frame;
  Occupancy bra;
  Occupancy ket;
  NormalTerm term;
};

/// S in {1,2,3}, n = 3, totals <= 6, at most 3 creators and 3 annihilators.
/// About one case in five is not number conserving.
OracleCase random_oracle_case(Rng& rng);

}  // namespace cohstate
