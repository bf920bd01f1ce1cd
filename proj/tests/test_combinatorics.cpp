#include <doctest.h>

#include <numeric>
#include <stdexcept>

#include "cohstate/combinatorics.hpp"

using namespace cohstate;

TEST_CASE("falling factorial") {
  CHECK(falling_factorial(5, 0) == 1);
  CHECK(falling_factorial(5, 2) == 20);
  CHECK(falling_factorial(5, 5) == 120);
  CHECK(falling_factorial(1, 2) == 0);  // over-annihilation
  CHECK(falling_factorial(0, 0) == 1);
  CHECK(falling_factorial(0, 1) == 0);
  CHECK(falling_factorial(1000, 4) == 1000ull * 999 * 998 * 997);
  CHECK_THROWS_AS(falling_factorial(100000, 5), std::overflow_error);
  CHECK_THROWS_AS(falling_factorial(3, -1), std::invalid_argument);
}

TEST_CASE("binomial and multinomial") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(102, 2) == 5151);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(60, 30) == 118264581564861424ull);
  const int parts[] = {1, 1, 1};
  CHECK(multinomial(parts) == 6);
  const int parts2[] = {2, 1, 1};
  CHECK(multinomial(parts2) == 12);
  const int none[] = {0, 0};
  CHECK(multinomial(none) == 1);
}

TEST_CASE("compositions are complete and descending") {
  const auto c = compositions(2, 3);
  REQUIRE(c.size() == 6);
  CHECK(c.front() == std::vector<int>{2, 0, 0});
  CHECK(c.back() == std::vector<int>{0, 0, 2});
  CHECK(std::is_sorted(c.rbegin(), c.rend()));

  for (int bins = 1; bins <= 5; ++bins) {
    for (int total = 0; total <= 6; ++total) {
      const auto all = compositions(total, bins);
      CHECK(all.size() == binomial(total + bins - 1, bins - 1));
      for (const auto& v : all) CHECK(std::accumulate(v.begin(), v.end(), 0) == total);
    }
  }
  CHECK_THROWS_AS(compositions(2, 0), std::invalid_argument);
}
