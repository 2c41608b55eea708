#include <doctest.h>

#include <cmath>

#include "jumptopo/rng.hpp"

using namespace jumptopo;

TEST_CASE("same seed, same stream") {
  GaussianStream a(42), b(42);
  for (int i = 0; i < 64; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("different seeds diverge") {
  GaussianStream a(1), b(2);
  bool all_equal = true;
  for (int i = 0; i < 16; ++i) all_equal = all_equal && a.next() == b.next();
  CHECK_FALSE(all_equal);
}

TEST_CASE("uniform stays in [0, 1)") {
  GaussianStream rng(7);
  for (int i = 0; i < 10000; ++i) {
    double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("moments are roughly standard normal") {
  GaussianStream rng(2024);
  const int n = 200000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    double z = rng.next();
    sum += z;
    sumsq += z * z;
  }
  double mean = sum / n;
  double var = sumsq / n - mean * mean;
  CHECK(std::abs(mean) < 0.01);
  CHECK(std::abs(var - 1.0) < 0.02);
}
