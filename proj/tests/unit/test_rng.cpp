#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "northpole/rng.hpp"

using northpole::RngStream;

TEST_CASE("identical seeds reproduce identical streams") {
  RngStream a(42);
  RngStream b(42);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.next_u64() == b.next_u64());
    CHECK(a.normal() == b.normal());
  }
}

TEST_CASE("derived streams depend on seed, label and index") {
  const auto s = RngStream::derive(7, "table", 3).seed();
  CHECK(s == RngStream::derive(7, "table", 3).seed());
  CHECK(s != RngStream::derive(8, "table", 3).seed());
  CHECK(s != RngStream::derive(7, "tablf", 3).seed());
  CHECK(s != RngStream::derive(7, "table", 4).seed());
}

TEST_CASE("split does not advance the parent") {
  RngStream a(1);
  RngStream b(1);
  (void)a.split("child");
  CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("uniform stays in [0, 1)") {
  RngStream rng(3);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("polar normals have unit variance and zero mean") {
  RngStream rng(11);
  const int n = 400000;
  double sum = 0.0;
  double sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  // 5 standard errors.
  CHECK(std::fabs(mean) < 5.0 / std::sqrt(n));
  CHECK(std::fabs(var - 1.0) < 5.0 * std::sqrt(2.0 / n));
}

TEST_CASE("mix64 is a bijection on a sample of inputs") {
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 0; i < 1000; ++i) out.push_back(northpole::mix64(i));
  std::sort(out.begin(), out.end());
  CHECK(std::adjacent_find(out.begin(), out.end()) == out.end());
}
