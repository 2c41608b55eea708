#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "jumptopo/bruteforce.hpp"
#include "jumptopo/distance.hpp"
#include "jumptopo/rng.hpp"
#include "jumptopo/shapes.hpp"

#include "support/random_inputs.hpp"

using namespace jumptopo;
using testsupport::random_mask;

namespace {

CubicalMask mask_from_bits(int dim, int m, std::vector<std::uint8_t> bits) {
  CubicalMask mask;
  mask.dim = dim;
  mask.resolution = m;
  mask.bits = std::move(bits);
  mask.validate();
  return mask;
}

}  // namespace

TEST_CASE("distance transform: single source on a line") {
  CubicalMask mask = mask_from_bits(1, 8, {0, 0, 0, 1, 0, 0, 0, 0});
  DistanceField field = distance_transform(mask);
  for (int i = 0; i < 8; ++i)
    CHECK(field.values[i] == doctest::Approx(std::abs(i - 3) / 8.0).epsilon(1e-15));
}

TEST_CASE("distance transform: two sources in the plane") {
  CubicalMask mask = mask_from_bits(2, 4, std::vector<std::uint8_t>(16, 0));
  mask.bits[0] = 1;   // cell (0,0)
  mask.bits[15] = 1;  // cell (3,3)
  DistanceField field = distance_transform(mask);
  CHECK(field.values[0] == 0.0);
  CHECK(field.values[15] == 0.0);
  // Cell (0,3) is 3 cells from either source along one axis.
  CHECK(field.values[3] == doctest::Approx(0.75).epsilon(1e-15));
  // Cell (1,2) is sqrt(5) cells from both.
  CHECK(field.values[6] == doctest::Approx(std::sqrt(5.0) / 4.0).epsilon(1e-15));
}

TEST_CASE("distance transform: empty mask gets the sentinel") {
  CubicalMask mask = mask_from_bits(2, 4, std::vector<std::uint8_t>(16, 0));
  DistanceField field = distance_transform(mask);
  for (double v : field.values) CHECK(v == field.empty_sentinel());
  CHECK(field.empty_sentinel() > std::sqrt(2.0));
}

TEST_CASE("distance transform agrees with the brute-force scan") {
  GaussianStream rng(314);
  for (int t = 0; t < 60; ++t) {
    int dim = 1 + t % 3;
    int m = dim == 3 ? 4 + t % 3 : 5 + t % 8;
    CubicalMask mask = random_mask(rng, dim, m, 0.15, /*ensure_nonempty=*/t % 4 != 0);
    DistanceField fast = distance_transform(mask);
    DistanceField slow = bruteforce::distance_field(mask);
    for (std::size_t i = 0; i < fast.values.size(); ++i)
      CHECK(fast.values[i] == doctest::Approx(slow.values[i]).epsilon(1e-12));
  }
}

TEST_CASE("offset: zero radius is the identity, growth is nested") {
  GaussianStream rng(99);
  CubicalMask mask = random_mask(rng, 2, 10, 0.2);
  CHECK(offset(mask, 0.0).bits == mask.bits);

  CubicalMask small = offset(mask, 0.15);
  CubicalMask large = offset(mask, 0.3);
  for (std::size_t i = 0; i < mask.bits.size(); ++i) {
    if (mask.bits[i]) CHECK(small.bits[i]);
    if (small.bits[i]) CHECK(large.bits[i]);
  }
  CHECK_THROWS_AS(offset(mask, -0.1), std::invalid_argument);
}

TEST_CASE("offset: inclusive at the exact cell distance") {
  CubicalMask mask = mask_from_bits(2, 4, std::vector<std::uint8_t>(16, 0));
  mask.bits[5] = 1;  // cell (1,1)
  CubicalMask grown = offset(mask, 0.25);
  // Axis neighbors sit exactly 0.25 away (inclusive); diagonal neighbors at
  // sqrt(2)*0.25 stay out.
  CHECK(grown.set_count() == 5);
  CHECK(grown.bits[1]);
  CHECK(grown.bits[4]);
  CHECK(grown.bits[6]);
  CHECK(grown.bits[9]);
  CHECK_FALSE(grown.bits[0]);
}

TEST_CASE("offset of an empty mask stays empty") {
  CubicalMask mask = mask_from_bits(2, 4, std::vector<std::uint8_t>(16, 0));
  CHECK(offset(mask, 0.5).empty());
}

TEST_CASE("hausdorff: hand-checked pair") {
  CubicalMask a = mask_from_bits(2, 4, std::vector<std::uint8_t>(16, 0));
  CubicalMask b = a;
  a.bits[0] = 1;   // center (0.125, 0.125)
  b.bits[15] = 1;  // center (0.875, 0.875)
  CHECK(hausdorff(a, b) == doctest::Approx(0.75 * std::sqrt(2.0)).epsilon(1e-15));
  CHECK(hausdorff(a, a) == 0.0);
  CHECK(hausdorff(a, b) == hausdorff(b, a));
}

TEST_CASE("hausdorff: refinement across divisible resolutions") {
  CubicalMask coarse = mask_from_bits(2, 4, std::vector<std::uint8_t>(16, 0));
  coarse.bits[0] = 1;
  CubicalMask fine = mask_from_bits(2, 8, std::vector<std::uint8_t>(64, 0));
  // The same cell subdivided: fine cells (0,0),(0,1),(1,0),(1,1) tile it, so
  // refining the coarse mask reproduces the same center set exactly.
  fine.bits[0] = fine.bits[1] = fine.bits[8] = fine.bits[9] = 1;
  CHECK(hausdorff(coarse, fine) == 0.0);
  CHECK(hausdorff(fine, coarse) == 0.0);

  // Keeping only the inner subcell leaves the refined far corner (center
  // (0.1875, 0.1875)) a full diagonal subcell step from the survivor.
  CubicalMask corner = mask_from_bits(2, 8, std::vector<std::uint8_t>(64, 0));
  corner.bits[0] = 1;
  double expected = std::sqrt(2.0) / 8.0;
  CHECK(hausdorff(coarse, corner) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(hausdorff(corner, coarse) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("hausdorff: rejects empty masks and incompatible grids") {
  CubicalMask a = mask_from_bits(2, 4, std::vector<std::uint8_t>(16, 0));
  CubicalMask b = a;
  b.bits[0] = 1;
  CHECK_THROWS_AS(hausdorff(a, b), std::runtime_error);
  CHECK_THROWS_AS(hausdorff(b, a), std::runtime_error);

  CubicalMask c = mask_from_bits(2, 6, std::vector<std::uint8_t>(36, 0));
  c.bits[0] = 1;
  CHECK_THROWS_AS(hausdorff(b, c), std::invalid_argument);

  CubicalMask d = mask_from_bits(1, 4, {1, 0, 0, 0});
  CHECK_THROWS_AS(hausdorff(b, d), std::invalid_argument);
}

TEST_CASE("hausdorff agrees with the brute-force scan") {
  GaussianStream rng(2718);
  for (int t = 0; t < 40; ++t) {
    int dim = 1 + t % 3;
    int m = dim == 3 ? 4 : 8;
    CubicalMask a = random_mask(rng, dim, m, 0.2);
    CubicalMask b = random_mask(rng, dim, m, 0.2);
    CHECK(hausdorff(a, b) == doctest::Approx(bruteforce::hausdorff(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("hausdorff to truth: halfspace raster") {
  ShapeSpec spec = make_halfspace_step(2, 4.0);
  CubicalMask raster = rasterize_jumpset(spec, 32);
  TruthDistanceReport rep = hausdorff_to_truth(raster, spec);

  // Set columns 15 and 16 have centers 1/64 off the true line.
  CHECK(rep.mask_to_truth == doctest::Approx(1.0 / 64.0).epsilon(1e-15));
  // The fine (4x) probe raster's worst center sits 3/256 away in both x and
  // y from the nearest set-cell center (fine centers fall on odd multiples
  // of 1/256, set centers on 31/64 and 33/64).
  CHECK(rep.truth_to_mask == doctest::Approx(std::sqrt(18.0) / 256.0).epsilon(1e-12));
  CHECK(rep.hausdorff_distance == doctest::Approx(std::sqrt(18.0) / 256.0).epsilon(1e-12));
  CHECK(rep.slack == doctest::Approx(std::sqrt(2.0) / 128.0).epsilon(1e-15));
}

TEST_CASE("hausdorff to truth: error cases") {
  ShapeSpec spec = make_halfspace_step(2, 4.0);
  CubicalMask empty = mask_from_bits(2, 16, std::vector<std::uint8_t>(256, 0));
  CHECK_THROWS_AS(hausdorff_to_truth(empty, spec), std::runtime_error);

  ShapeSpec flat = make_constant(2, 0.0);
  CubicalMask something = mask_from_bits(2, 16, std::vector<std::uint8_t>(256, 0));
  something.bits[0] = 1;
  CHECK_THROWS_AS(hausdorff_to_truth(something, flat), std::runtime_error);
}
