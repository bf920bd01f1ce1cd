#include "cohstate/combinatorics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace cohstate {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    throw std::overflow_error("integer overflow in combinatorial product");
  }
  return a * b;
}

void fill_compositions(int remaining, int bin, std::vector<int>& current,
                       std::vector<std::vector<int>>& out) {
  const int last = static_cast<int>(current.size()) - 1;
  if (bin == last) {
    current[bin] = remaining;
    out.push_back(current);
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    current[bin] = k;
    fill_compositions(remaining - k, bin + 1, current, out);
  }
}

}  // namespace

std::uint64_t falling_factorial(std::int64_t n, int k) {
  if (k < 0) throw std::invalid_argument("falling_factorial: negative order");
  if (n < k) {
    if (n < 0) throw std::invalid_argument("falling_factorial: negative argument");
    return 0;
  }
  std::uint64_t result = 1;
  for (int i = 0; i < k; ++i) {
    result = checked_mul(result, static_cast<std::uint64_t>(n - i));
  }
  return result;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    // result * (n - k + i) is divisible by i at every step
    const std::uint64_t g = std::gcd(result, static_cast<std::uint64_t>(i));
    result = checked_mul(result / g, static_cast<std::uint64_t>(n - k + i) / (i / g));
  }
  return result;
}

std::uint64_t multinomial(std::span<const int> parts) {
  std::uint64_t result = 1;
  int running = 0;
  for (int k : parts) {
    if (k < 0) throw std::invalid_argument("multinomial: negative part");
    running += k;
    result = checked_mul(result, binomial(running, k));
  }
  return result;
}

std::vector<std::vector<int>> compositions(int total, int bins) {
  if (bins < 1) throw std::invalid_argument("compositions: need at least one bin");
  if (total < 0) throw std::invalid_argument("compositions: negative total");
  std::vector<std::vector<int>> out;
  std::vector<int> current(static_cast<std::size_t>(bins), 0);
  fill_compositions(total, 0, current, out);
  return out;
}

}  // namespace cohstate
