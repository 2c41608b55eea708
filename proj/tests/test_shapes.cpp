#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "jumptopo/shapes.hpp"

using namespace jumptopo;
using nlohmann::json;

namespace {

double at(const ShapeSpec& spec, double x, double y) {
  std::array<double, 2> p{x, y};
  return spec.value(PointView{p});
}

double jd(const ShapeSpec& spec, double x, double y) {
  std::array<double, 2> p{x, y};
  return spec.jump_distance(PointView{p});
}

}  // namespace

TEST_CASE("two circles: values and boundary convention") {
  ShapeSpec spec = make_shape("two_circles", json::object());
  CHECK(spec.dim == 2);
  CHECK(spec.jump_floor == 4.0);
  CHECK(spec.mu == 1.0);
  CHECK(spec.betti == std::vector<int>{2, 2});

  CHECK(at(spec, 0.3, 0.5) == 4.0);   // first disk center
  CHECK(at(spec, 0.7, 0.5) == 4.0);   // second disk center
  CHECK(at(spec, 0.05, 0.05) == 0.0); // far outside
  // A point exactly on a circle belongs to the designated (outside) region.
  CHECK(at(spec, 0.45, 0.5) == 0.0);
}

TEST_CASE("two circles: jump distance") {
  ShapeSpec spec = make_shape("two_circles", json::object());
  CHECK(jd(spec, 0.3, 0.5) == doctest::Approx(0.15).epsilon(1e-12));
  CHECK(jd(spec, 0.45, 0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(jd(spec, 0.5, 0.5) == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("two circles: analytic diagram") {
  ShapeSpec spec = make_shape("two_circles", json::object());
  REQUIRE(spec.has_analytic_diagram);
  REQUIRE(spec.analytic_diagram.size() == 2);

  const auto& h0 = spec.analytic_diagram[0];
  REQUIRE(h0.points.size() == 2);
  // The circles sit 0.1 apart, so their offsets merge at 0.05.
  CHECK(h0.points[0].birth == 0.0);
  CHECK(h0.points[0].death == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(h0.points[1].birth == 0.0);
  CHECK(std::isinf(h0.points[1].death));

  const auto& h1 = spec.analytic_diagram[1];
  REQUIRE(h1.points.size() == 2);
  for (const auto& p : h1.points) {
    CHECK(p.birth == 0.0);
    CHECK(p.death == doctest::Approx(0.15).epsilon(1e-12));
  }
}

TEST_CASE("single circle: analytic diagram") {
  ShapeSpec spec = make_circles({{0.5, 0.5, 0.2}}, 4.0);
  CHECK(spec.betti == std::vector<int>{1, 1});
  REQUIRE(spec.has_analytic_diagram);
  REQUIRE(spec.analytic_diagram[0].points.size() == 1);
  CHECK(std::isinf(spec.analytic_diagram[0].points[0].death));
  REQUIRE(spec.analytic_diagram[1].points.size() == 1);
  CHECK(spec.analytic_diagram[1].points[0].death == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("circles reject bad geometry") {
  CHECK_THROWS_AS(make_circles({{0.4, 0.5, 0.2}, {0.6, 0.5, 0.2}}, 4.0), std::invalid_argument);
  CHECK_THROWS_AS(make_circles({{0.1, 0.5, 0.15}}, 4.0), std::invalid_argument);
  CHECK_THROWS_AS(make_circles({{0.5, 0.5, 0.0}}, 4.0), std::invalid_argument);
  CHECK_THROWS_AS(make_circles({}, 4.0), std::invalid_argument);
}

TEST_CASE("halfspace step") {
  ShapeSpec spec = make_halfspace_step(2, 4.0);
  CHECK(spec.betti == std::vector<int>{1, 0});
  CHECK(at(spec, 0.2, 0.9) == 0.0);
  CHECK(at(spec, 0.8, 0.1) == 4.0);
  CHECK(at(spec, 0.5, 0.3) == 0.0);  // boundary goes to the designated side
  CHECK(jd(spec, 0.2, 0.9) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(jd(spec, 0.8, 0.1) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(spec.lipschitz == 0.0);

  REQUIRE(spec.has_analytic_diagram);
  REQUIRE(spec.analytic_diagram[0].points.size() == 1);
  CHECK(std::isinf(spec.analytic_diagram[0].points[0].death));
  CHECK(spec.analytic_diagram[1].points.empty());
}

TEST_CASE("lipschitz halfspace keeps the jump height exact") {
  ShapeSpec spec = make_halfspace_step_lipschitz(2, 4.0, 2.0);
  CHECK(spec.lipschitz == 2.0);
  // Approaching the interface from both sides: the gap stays exactly at the
  // floor because both pieces ramp at the same rate.
  double left = at(spec, 0.5, 0.5);
  double right = at(spec, 0.5 + 1e-9, 0.5);
  CHECK(right - left == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("constant signal has an empty jump set") {
  ShapeSpec spec = make_constant(2, 1.5);
  CHECK(at(spec, 0.3, 0.7) == 1.5);
  CHECK(std::isinf(jd(spec, 0.5, 0.5)));
  CHECK(spec.betti == std::vector<int>{0, 0});
  CubicalMask raster = rasterize_jumpset(spec, 32);
  CHECK(raster.empty());
}

TEST_CASE("pyramid geometry") {
  ShapeSpec spec = make_shape("pyramid", json::object());
  CHECK(spec.dim == 2);
  CHECK(spec.betti == std::vector<int>{1, 0});
  // Default extent 0.1, apex angle pi/3: cos(2*angle) < 0, so the declared
  // bound falls back to sin(angle).
  CHECK(spec.mu == doctest::Approx(std::sin(std::numbers::pi / 3)).epsilon(1e-12));

  double w = 0.2 * std::tan(std::numbers::pi / 3);
  CHECK(spec.reach_mu == doctest::Approx(w).epsilon(1e-12));

  CHECK(jd(spec, 0.7, 0.5) == doctest::Approx(0.0).epsilon(1e-12));   // apex
  CHECK(jd(spec, 0.5, 0.05) == doctest::Approx(0.0).epsilon(1e-12));  // line stub
  // Midpoint of one lateral edge.
  CHECK(jd(spec, 0.6, (0.5 - w + 0.5) / 2.0) == doctest::Approx(0.0).epsilon(1e-9));
  // Between the base corners the interface is interior, not a jump.
  CHECK(jd(spec, 0.5, 0.5) > 0.1);
  // Inside the tent the value is the designated piece's.
  CHECK(at(spec, 0.55, 0.5) == 0.0);
  CHECK(at(spec, 0.9, 0.5) == 4.0);
}

TEST_CASE("pyramid rejects degenerate parameters") {
  CHECK_THROWS_AS(make_pyramid(0.001, std::numbers::pi / 3, 4.0), std::invalid_argument);
  CHECK_THROWS_AS(make_pyramid(0.1, 0.0, 4.0), std::invalid_argument);
  CHECK_THROWS_AS(make_pyramid(0.1, std::numbers::pi / 2, 4.0), std::invalid_argument);
  CHECK_THROWS_AS(make_pyramid(0.3, std::numbers::pi / 3, 4.0), std::invalid_argument);
}

TEST_CASE("catalog round trip and self-tests") {
  for (const auto& name : shape_catalog()) {
    ShapeSpec spec = make_shape(name, json::object());
    // Names normalize ("circle" resolves to a one-disk "circles" spec), but
    // the stored name + params must always rebuild an equivalent spec.
    ShapeSpec rebuilt = make_shape(spec.name, spec.params);
    CHECK(rebuilt.dim == spec.dim);
    CHECK(rebuilt.jump_floor == spec.jump_floor);
    CHECK(rebuilt.betti == spec.betti);

    ShapeSelfTestReport report = shape_self_test(spec);
    INFO(name, ": ", report.detail);
    CHECK(report.pass());
  }
  CHECK_THROWS_AS(make_shape("no_such_shape", json::object()), std::invalid_argument);
}

TEST_CASE("sampling is deterministic and exact when noiseless") {
  ShapeSpec spec = make_shape("two_circles", json::object());
  ObservationGrid a = sample_to_grid(spec, 32, 0.25, 99);
  ObservationGrid b = sample_to_grid(spec, 32, 0.25, 99);
  CHECK(a.values == b.values);

  ObservationGrid c = sample_to_grid(spec, 32, 0.25, 100);
  CHECK(a.values != c.values);

  ObservationGrid clean = sample_to_grid(spec, 32, 0.0, 99);
  double x[kMaxDim];
  for (std::size_t i = 0; i < clean.values.size(); ++i) {
    clean.site_coords(i, x);
    CHECK(clean.values[i] == spec.value(PointView{x, 2}));
  }
}

TEST_CASE("jump set rasterization: halfspace at m = 32") {
  ShapeSpec spec = make_halfspace_step(2, 4.0);
  CubicalMask raster = rasterize_jumpset(spec, 32);
  // Only the two columns whose centers sit within half a cell diagonal
  // (sqrt(2)/64 ~ 0.0221) of x = 1/2 qualify.
  CHECK(raster.set_count() == 64);
  int c[kMaxDim];
  for (std::size_t i = 0; i < raster.bits.size(); ++i) {
    raster.lattice().unflatten(i, c);
    bool expected = c[0] == 15 || c[0] == 16;
    CHECK(static_cast<bool>(raster.bits[i]) == expected);
  }
  CHECK_THROWS_AS(rasterize_jumpset(spec, 4), std::invalid_argument);
}
