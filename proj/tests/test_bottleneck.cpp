#include <doctest.h>

#include <cmath>

#include "jumptopo/bottleneck.hpp"
#include "jumptopo/bruteforce.hpp"
#include "jumptopo/distance.hpp"
#include "jumptopo/rng.hpp"

#include "support/random_inputs.hpp"

using namespace jumptopo;
using testsupport::random_diagram;
using testsupport::random_mask;

namespace {

PersistenceDiagram diagram(int degree, std::vector<DiagramPoint> points) {
  PersistenceDiagram dgm;
  dgm.degree = degree;
  dgm.points = std::move(points);
  return dgm;
}

}  // namespace

TEST_CASE("bottleneck: identical diagrams") {
  PersistenceDiagram a = diagram(0, {{0.0, 0.4}, {0.1, 0.9}, {0.2, kInfiniteDeath}});
  CHECK(bottleneck(a, a) == 0.0);
}

TEST_CASE("bottleneck: lone point against the diagonal") {
  PersistenceDiagram a = diagram(0, {{0.0, 1.0}});
  PersistenceDiagram b = diagram(0, {});
  CHECK(bottleneck(a, b) == 0.5);
  CHECK(bottleneck(b, a) == 0.5);
}

TEST_CASE("bottleneck: direct match beats the diagonal") {
  PersistenceDiagram a = diagram(0, {{0.0, 1.0}});
  CHECK(bottleneck(a, diagram(0, {{0.1, 1.1}})) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(bottleneck(a, diagram(0, {{0.0, 1.2}})) == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("bottleneck: distant points both take the diagonal") {
  PersistenceDiagram a = diagram(0, {{0.0, 0.2}});
  PersistenceDiagram b = diagram(0, {{5.0, 5.2}});
  CHECK(bottleneck(a, b) == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("bottleneck: essential classes") {
  PersistenceDiagram one = diagram(0, {{0.0, kInfiniteDeath}});
  PersistenceDiagram none = diagram(0, {});
  CHECK(std::isinf(bottleneck(one, none)));

  // Essentials pair by sorted birth; the finite part is empty here.
  PersistenceDiagram a = diagram(0, {{0.0, kInfiniteDeath}, {0.5, kInfiniteDeath}});
  PersistenceDiagram b = diagram(0, {{0.1, kInfiniteDeath}, {0.4, kInfiniteDeath}});
  CHECK(bottleneck(a, b) == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("bottleneck: degree mismatch is rejected") {
  PersistenceDiagram a = diagram(0, {});
  PersistenceDiagram b = diagram(1, {});
  CHECK_THROWS_AS(bottleneck(a, b), std::invalid_argument);
}

TEST_CASE("bottleneck: zero-persistence points are ignorable noise") {
  PersistenceDiagram a = diagram(0, {{0.3, 0.3}, {0.0, 1.0}});
  PersistenceDiagram b = diagram(0, {{0.0, 1.0}});
  CHECK(bottleneck(a, b) == 0.0);
}

TEST_CASE("bottleneck agrees with exhaustive matching") {
  GaussianStream rng(4242);
  for (int t = 0; t < 60; ++t) {
    int essentials = t % 3 == 0 ? t % 2 : 0;
    PersistenceDiagram a = random_diagram(rng, 0, 6, essentials);
    PersistenceDiagram b = random_diagram(rng, 0, 6, essentials);
    double fast = bottleneck(a, b);
    double slow = bruteforce::bottleneck(a, b);
    INFO("pair ", t);
    if (std::isinf(slow))
      CHECK(std::isinf(fast));
    else
      CHECK(fast == slow);
  }
}

TEST_CASE("stability: offsets of a mask stay within the bound") {
  GaussianStream rng(1212);
  for (int t = 0; t < 10; ++t) {
    CubicalMask a = random_mask(rng, 2, 8, 0.25);
    CubicalMask b = offset(a, 0.2);
    StabilityReport report = stability_check(a, b, 1);
    CHECK(report.hausdorff_distance <= 0.2);
    CHECK(report.within_bound);
    REQUIRE(report.bottleneck_per_degree.size() == 2);
    for (std::size_t s = 0; s < report.margin.size(); ++s) CHECK(report.margin[s] >= 0.0);
  }
}
