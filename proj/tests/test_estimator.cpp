#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "jumptopo/estimator.hpp"
#include "jumptopo/shapes.hpp"

using namespace jumptopo;

namespace {

ObservationGrid grid_1d(std::vector<double> values) {
  ObservationGrid obs;
  obs.dim = 1;
  obs.side = static_cast<int>(values.size());
  obs.values = std::move(values);
  return obs;
}

HistogramField field_1d(std::vector<double> means) {
  HistogramField field;
  field.dim = 1;
  field.cells_per_axis = static_cast<int>(means.size());
  field.counts.assign(means.size(), 1);
  field.means = std::move(means);
  return field;
}

}  // namespace

TEST_CASE("histogram: block means are exact") {
  // N = 4, m = 2 in 2D: each cell averages a 2x2 block of samples.
  ObservationGrid obs;
  obs.dim = 2;
  obs.side = 4;
  obs.values.resize(16);
  for (std::size_t i = 0; i < 16; ++i) obs.values[i] = static_cast<double>(i);

  HistogramField field = build_histogram(obs, 0.5);
  REQUIRE(field.cells_per_axis == 2);
  CHECK(field.counts == std::vector<std::int64_t>{4, 4, 4, 4});
  // Row-major, last axis fastest: cell (0,0) holds samples 0,1,4,5.
  CHECK(field.means[0] == (0.0 + 1.0 + 4.0 + 5.0) / 4.0);
  CHECK(field.means[1] == (2.0 + 3.0 + 6.0 + 7.0) / 4.0);
  CHECK(field.means[2] == (8.0 + 9.0 + 12.0 + 13.0) / 4.0);
  CHECK(field.means[3] == (10.0 + 11.0 + 14.0 + 15.0) / 4.0);
}

TEST_CASE("histogram: boundary samples go to the lower cell") {
  // N = 6, m = 4: sites 3/12 and 9/12 sit exactly on interior cell
  // boundaries and must land in cells 0 and 2.
  ObservationGrid obs = grid_1d({0, 0, 0, 0, 0, 0});
  HistogramField field = build_histogram(obs, 0.25);
  CHECK(field.counts == std::vector<std::int64_t>{2, 1, 2, 1});
}

TEST_CASE("histogram: empty cell is an error") {
  ObservationGrid obs = grid_1d({1, 2, 3, 4});
  CHECK_THROWS_AS(build_histogram(obs, 0.125), std::runtime_error);
  CHECK_THROWS_AS(build_histogram(obs, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_histogram(obs, 1.5), std::invalid_argument);
}

TEST_CASE("local range on a 1D step") {
  HistogramField field = field_1d({0, 0, 4, 4});
  // Adjacent cells touch (box gap zero), so they are in range at any radius.
  CHECK(local_range(field, 0, 0.01) == 0.0);
  CHECK(local_range(field, 1, 0.01) == 4.0);
  CHECK(local_range(field, 2, 0.01) == 4.0);
  CHECK(local_range(field, 3, 0.01) == 0.0);

  CubicalMask mask = estimate_jumpset(field, 0.01, 4.0);
  CHECK(mask.bits == std::vector<std::uint8_t>{0, 1, 1, 0});

  // r = 0.3 reaches across one intervening cell (gap 0.25), so the far side
  // of the step becomes visible from cell 0 as well.
  CubicalMask wide = estimate_jumpset(field, 0.3, 4.0);
  CHECK(wide.bits == std::vector<std::uint8_t>{1, 1, 1, 1});
}

TEST_CASE("neighborhood radius is inclusive and exact") {
  // Cells 0 and 3 on a 4-cell axis have box gap exactly 2 cells = 0.5.
  HistogramField field = field_1d({4, 0, 0, 0});
  CHECK(local_range(field, 3, 0.49999) == 0.0);
  CHECK(local_range(field, 3, 0.5) == 4.0);
}

TEST_CASE("diagonal neighbors touch at a corner") {
  HistogramField field;
  field.dim = 2;
  field.cells_per_axis = 2;
  field.means = {0, 4, 4, 0};
  field.counts.assign(4, 1);
  // Diagonally adjacent boxes have gap zero, so even a tiny radius sees the
  // full checkerboard contrast from every cell.
  for (std::size_t c = 0; c < 4; ++c) CHECK(local_range(field, c, 1e-6) == 4.0);
}

TEST_CASE("threshold is inclusive at exactly half the floor") {
  HistogramField field = field_1d({0, 2, 0, 0});
  // Local range 2 equals floor/2 for floor 4: the cell must be kept.
  CubicalMask mask = estimate_jumpset(field, 0.01, 4.0);
  CHECK(mask.bits == std::vector<std::uint8_t>{1, 1, 1, 0});
  CHECK_THROWS_AS(estimate_jumpset(field, 0.01, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(estimate_jumpset(field, -0.1, 4.0), std::invalid_argument);
}

TEST_CASE("pipeline: overrides bypass calibration") {
  ShapeSpec spec = make_halfspace_step(2, 4.0);
  ObservationGrid obs = sample_to_grid(spec, 128, 0.0, 5);

  PipelineOptions opt;
  opt.jump_floor = 4.0;
  opt.sigma = 0.0;  // would be rejected by calibration; overrides make it moot
  opt.mu = 1.0;
  opt.cell_width_override = 1.0 / 32.0;
  opt.radius_override = 1.0 / 32.0;
  EstimateResult result = estimate_pipeline(obs, opt);

  CHECK(result.params.cell_width == 1.0 / 32.0);
  CHECK(result.params.radius == 1.0 / 32.0);
  CHECK(result.params.jump_threshold == 2.0);
  CHECK(result.params.survival_offset == doctest::Approx(1.0 / 16.0).epsilon(1e-12));
  CHECK(result.mask.resolution == 32);

  // Noiseless step: a column is kept iff its radius-1/32 neighborhood (which
  // spans index gap 2, the box gap being exactly r) straddles x = 1/2, i.e.
  // columns 14 through 17.
  int c[kMaxDim];
  for (std::size_t i = 0; i < result.mask.bits.size(); ++i) {
    result.mask.lattice().unflatten(i, c);
    bool expected = c[0] >= 14 && c[0] <= 17;
    CHECK(static_cast<bool>(result.mask.bits[i]) == expected);
  }
}

TEST_CASE("pipeline: calibrated parameters match the frozen values") {
  ShapeSpec spec = make_shape("two_circles", nlohmann::json::object());
  ObservationGrid obs = sample_to_grid(spec, 256, 0.25, 11);

  PipelineOptions opt;
  opt.jump_floor = 4.0;
  opt.sigma = 0.25;
  opt.mu = 1.0;
  EstimateResult result = estimate_pipeline(obs, opt);

  CHECK(result.params.cell_width == doctest::Approx(0.05203466319735611).epsilon(1e-12));
  CHECK(result.params.radius == doctest::Approx(0.12562278960457327).epsilon(1e-12));
  CHECK(result.params.survival_offset == doctest::Approx(0.25124557920914653).epsilon(1e-12));
  CHECK(result.field.cells_per_axis == 19);
  CHECK(result.mask.resolution == 19);
}

TEST_CASE("off-jump histogram error vanishes for piecewise constant signals") {
  ShapeSpec spec = make_halfspace_step(2, 4.0);
  ObservationGrid obs = sample_to_grid(spec, 64, 0.0, 3);
  HistogramField field = build_histogram(obs, 0.125);
  CHECK(histogram_sup_error_off_jump(field, spec) == 0.0);

  ShapeSpec ramp = make_halfspace_step_lipschitz(2, 4.0, 2.0);
  ObservationGrid robs = sample_to_grid(ramp, 64, 0.0, 3);
  HistogramField rfield = build_histogram(robs, 0.125);
  // Bounded by the slope times the cell diagonal.
  CHECK(histogram_sup_error_off_jump(rfield, ramp) <= 2.0 * std::sqrt(2.0) * 0.125);
}
