#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "jumptopo/types.hpp"

#include <json.hpp>

namespace jumptopo {

using PointView = std::span<const double>;

// Piecewise-defined test signal on [0,1]^d with a known jump set. Regions are
// listed with the liminf-designated region first: a point on a shared boundary
// takes the value of the first region whose signed distance there is <= 0,
// which pins the boundary value convention once and for all.
struct ShapeRegion {
  // Negative strictly inside the region, zero on its boundary.
  std::function<double(PointView)> signed_distance;
  std::function<double(PointView)> piece_value;
};

struct ShapeSpec {
  std::string name;
  int dim = 0;
  std::vector<ShapeRegion> regions;

  double jump_floor = 0.0;  // minimum jump height across the jump set
  double mu = 0.0;          // gradient lower bound of the distance function near the jump set
  double reach_mu = 0.0;    // scale up to which that bound holds
  double lipschitz = 0.0;   // within-piece modulus slope (0 for piecewise constant)

  // Exact Euclidean distance to the jump set; +inf when the jump set is empty.
  std::function<double(PointView)> jump_distance;

  // Betti numbers of the jump set, degrees 0..dim-1.
  std::vector<int> betti;

  // Closed-form offset-filtration diagram when one is known; otherwise empty
  // and consumers fall back to a fine rasterization.
  bool has_analytic_diagram = false;
  std::vector<PersistenceDiagram> analytic_diagram;

  nlohmann::json params;  // enough to rebuild the shape via make_shape

  double value(PointView x) const;
  void validate() const;
};

struct Disk {
  double cx = 0.0, cy = 0.0, radius = 0.0;
};

// Plateaus of height `jump_floor` on disjoint disks, zero outside. The jump
// set is the union of the circles. Disks must be strictly disjoint and
// strictly inside the unit square. An analytic diagram is attached for one or
// two disks.
ShapeSpec make_circles(const std::vector<Disk>& disks, double jump_floor);

// Step of height `jump_floor` across the hyperplane x_1 = 1/2.
ShapeSpec make_halfspace_step(int dim, double jump_floor);

// Same geometry as the halfspace step with a Lipschitz ramp added on each
// piece; exercises nonzero within-piece modulus.
ShapeSpec make_halfspace_step_lipschitz(int dim, double jump_floor, double slope);

// No jumps at all: constant signal, empty jump set.
ShapeSpec make_constant(int dim, double level);

// Planar jump set with a triangular bump: the segment x_1 = 1/2 with a tent
// whose apex sits at (1/2 + 2*extent, 1/2) and whose base half-angle at the
// apex is `angle`. Stresses low reach regularity: mu degrades as the apex
// sharpens. `min_resolution` guards against rasterizing below the feature
// scale: extent must exceed 2 / min_resolution.
ShapeSpec make_pyramid(double extent, double angle, double jump_floor,
                       int min_resolution = 256);

// Catalog entry point used by the CLI and config files.
ShapeSpec make_shape(const std::string& name, const nlohmann::json& params);
std::vector<std::string> shape_catalog();

// Evaluate the signal on the N^d midpoint lattice and add Gaussian noise with
// the given sigma, using the deterministic stream seeded by `seed`.
ObservationGrid sample_to_grid(const ShapeSpec& spec, int side, double sigma,
                               std::uint64_t seed);

// Mark every cell of an m^d grid whose center lies within half a cell
// diagonal of the jump set. Requires m >= 8; coarser grids cannot hold any
// catalog shape.
CubicalMask rasterize_jumpset(const ShapeSpec& spec, int resolution);

// Generator self-checks: region closures cover the cube, jumps across the
// rasterized jump set clear the declared floor, and the declared Betti
// numbers match a brute-force count on a fine rasterization.
struct ShapeSelfTestReport {
  bool covers = false;
  bool jump_floor_ok = false;
  bool betti_ok = false;
  std::string detail;
  bool pass() const { return covers && jump_floor_ok && betti_ok; }
};
ShapeSelfTestReport shape_self_test(const ShapeSpec& spec, int resolution = 128);

}  // namespace jumptopo
