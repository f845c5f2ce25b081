#include <doctest.h>

#include <stdexcept>

#include "oracle.hpp"
#include "pascalforge/census.hpp"

using namespace pascalforge;
using testsupport::oracle_census;

TEST_CASE("census_row examples") {
  CHECK(census_row(12, 8).counts[4] == 5);
  CHECK(census_row(16, 8).counts[0] == 12);
  RowResidueCensus row59 = census_row(59, 16);
  for (uint64_t r : {1, 11, 13, 15}) CHECK(row59.counts[r] == 6);
  CHECK_THROWS_AS(census_row(5, 1), std::domain_error);
  CHECK_THROWS_AS(census_row(5, 1 << 17), std::domain_error);
}

TEST_CASE("census counts match the exact census and sum to n + 1") {
  for (uint64_t k : {2, 3, 4, 8, 16}) {
    for (uint64_t n = 0; n <= 160; ++n) {
      RowResidueCensus census = census_row(n, k);
      CHECK(census.total() == n + 1);
      CHECK(census.counts == oracle_census(n, k));
    }
  }
}

TEST_CASE("glaisher_count") {
  CHECK(glaisher_count(0) == 1);
  CHECK(glaisher_count(6) == 4);
  CHECK(glaisher_count(59) == 32);
  for (uint64_t n = 0; n <= 512; ++n) {
    CHECK(glaisher_count(n) == census_row(n, 2).counts[1]);
  }
}

TEST_CASE("fine_count") {
  CHECK(fine_count(4, 2) == 2);
  CHECK(fine_count(2, 5) == 3);
  CHECK(fine_count(59, 2) == 32);
  for (uint64_t p : {2, 3, 5}) {
    for (uint64_t n = 0; n <= 512; ++n) {
      CHECK(fine_count(n, p) == n + 1 - census_row(n, p).counts[0]);
    }
  }
}

TEST_CASE("hexel_sachs_mod3") {
  CHECK(hexel_sachs_mod3(0) == std::pair<uint64_t, uint64_t>{1, 0});
  CHECK(hexel_sachs_mod3(2) == std::pair<uint64_t, uint64_t>{2, 1});
  CHECK(hexel_sachs_mod3(3) == std::pair<uint64_t, uint64_t>{2, 0});
  for (uint64_t n = 0; n <= 512; ++n) {
    RowResidueCensus census = census_row(n, 3);
    auto [a1, a2] = hexel_sachs_mod3(n);
    CHECK(a1 == census.counts[1]);
    CHECK(a2 == census.counts[2]);
  }
}

TEST_CASE("davis_webb_mod4") {
  CHECK(davis_webb_mod4(6) == std::array<uint64_t, 3>{2, 2, 2});
  CHECK(davis_webb_mod4(4) == std::array<uint64_t, 3>{2, 1, 0});
  CHECK(davis_webb_mod4(3) == std::array<uint64_t, 3>{2, 0, 2});
  CHECK_THROWS_AS(davis_webb_mod4(0), std::domain_error);
  for (uint64_t n = 1; n <= 512; ++n) {
    RowResidueCensus census = census_row(n, 4);
    std::array<uint64_t, 3> counts = davis_webb_mod4(n);
    CHECK(counts[0] == census.counts[1]);
    CHECK(counts[1] == census.counts[2]);
    CHECK(counts[2] == census.counts[3]);
  }
}

TEST_CASE("granville_mod8_check") {
  CHECK(granville_mod8_check(12));  // even-class counts like 5 are exempt
  CHECK(granville_mod8_check(59));
  CHECK(granville_mod8_check(0));
  for (uint64_t n = 0; n <= 512; ++n) CHECK(granville_mod8_check(n));
}

TEST_CASE("odd-class counts mod 16 are even for n >= 1") {
  for (uint64_t n = 1; n <= 512; ++n) {
    RowResidueCensus census = census_row(n, 16);
    for (uint64_t r = 1; r < 16; r += 2) CHECK(census.counts[r] % 2 == 0);
  }
}
