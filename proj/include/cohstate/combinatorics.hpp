#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cohstate {

/// n(n-1)...(n-k+1) in exact integer arithmetic. Zero when 0 <= n < k.
/// Throws std::overflow_error if the product does not fit in 64 bits.
std::uint64_t falling_factorial(std::int64_t n, int k);

std::uint64_t binomial(int n, int k);

/// m! / (k_1! k_2! ... k_S!) with m = sum of parts.
std::uint64_t multinomial(std::span<const int> parts);

/// All ways of distributing `total` indistinguishable units over `bins` bins,
/// ordered lexicographically descending (first bin largest first).
std::vector<std::vector<int>> compositions(int total, int bins);

}  // namespace cohstate
