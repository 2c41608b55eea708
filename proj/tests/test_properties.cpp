#include <doctest.h>

#include "support/properties.hpp"

// Quick passes over the shared metamorphic properties; the acceptance suite
// runs the same checks at full size.

using namespace jumptopo::testsupport;

TEST_CASE("property suites hold on sampled inputs") {
  for (const auto& report : run_property_suites(6021, 25)) {
    INFO(report.name, ": ", report.first_failure);
    CHECK(report.violations == 0);
    CHECK(report.trials >= 25);
  }
}
