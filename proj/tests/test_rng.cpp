#include <doctest.h>

#include <cmath>
#include <set>

#include "qaoae/rng.hpp"

using namespace qaoae;

TEST_CASE("splitmix64 reference sequence") {
  // first outputs for seed 1234567 from the published reference code
  SplitMix64 rng(1234567);
  CHECK(rng.next_u64() == 6457827717110365317ULL);
  CHECK(rng.next_u64() == 3203168211198807973ULL);
}

TEST_CASE("uniform stays in [0,1) and is deterministic") {
  SplitMix64 a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(u == b.uniform());
  }
}

TEST_CASE("uniform first moment") {
  SplitMix64 rng(7);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) sum += rng.uniform();
  const double mean = sum / n;
  // 3 sigma of the mean of U[0,1)
  CHECK(std::abs(mean - 0.5) < 3.0 / std::sqrt(12.0 * n));
}

TEST_CASE("below is bounded and hits every residue") {
  SplitMix64 rng(99);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t v = rng.below(7);
    CHECK(v < 7);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);
}

TEST_CASE("split_seed children differ from each other and the parent") {
  const std::uint64_t parent = 17;
  std::set<std::uint64_t> children;
  for (int i = 0; i < 100; ++i) children.insert(split_seed(parent, i));
  CHECK(children.size() == 100);
  CHECK(children.count(parent) == 0);
  CHECK(split_seed(parent, 3) == split_seed(parent, 3));
}
