#include <cmath>
#include <vector>

#include "doctest.h"

#include "hdct/rng.hpp"

using namespace hdct;

TEST_CASE("streams with equal ids produce equal sequences") {
  RngStream a(42, 7, 1);
  RngStream b(42, 7, 1);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
}

TEST_CASE("any id component changes the stream") {
  RngStream base(42, 7, 1);
  RngStream seed(43, 7, 1);
  RngStream rep(42, 8, 1);
  RngStream group(42, 7, 2);
  const std::uint64_t first = base.next_u64();
  CHECK(first != seed.next_u64());
  CHECK(first != rep.next_u64());
  CHECK(first != group.next_u64());
}

TEST_CASE("uniform stays in [0,1) with a sane mean") {
  RngStream rng(1, 0, 0);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / 100000.0 - 0.5) < 0.005);
}

TEST_CASE("normal moments") {
  RngStream rng(2, 0, 0);
  const int n = 200000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sum_sq += z * z;
  }
  const double mean = sum / n;
  CHECK(std::abs(mean) < 0.01);
  CHECK(std::abs(sum_sq / n - mean * mean - 1.0) < 0.02);
}

TEST_CASE("normal cache keeps sequences reproducible") {
  RngStream a(3, 1, 0);
  std::vector<double> first;
  for (int i = 0; i < 9; ++i) first.push_back(a.normal());
  RngStream b(3, 1, 0);
  for (int i = 0; i < 9; ++i) {
    CHECK(b.normal() == first[static_cast<std::size_t>(i)]);
  }
}

TEST_CASE("derive_seed is a stable function of its inputs") {
  // Frozen values: published experiment CSVs are only reproducible if the
  // stream derivation never changes.
  CHECK(derive_seed(0, 0, 0) == 2176872171090964246ULL);
  CHECK(derive_seed(42, 0, 0) == 2607034970388656051ULL);
  CHECK(derive_seed(42, 1, 0) == 16884249596173760772ULL);
  CHECK(derive_seed(42, 0, 1) == 9927283590265195014ULL);
  CHECK(derive_seed(42, 1, RngStream::kCovarianceStream) ==
        17895247474712767109ULL);
}
