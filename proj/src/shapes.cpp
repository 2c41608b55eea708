#include "jumptopo/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "jumptopo/bruteforce.hpp"
#include "jumptopo/filtration.hpp"
#include "jumptopo/rng.hpp"

namespace jumptopo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double dist2(PointView x, const double* y, int dim) {
  double s = 0.0;
  for (int k = 0; k < dim; ++k) {
    double d = x[k] - y[k];
    s += d * d;
  }
  return s;
}

// Distance from p to the segment a-b in the plane.
double segment_distance(double px, double py, double ax, double ay, double bx, double by) {
  double vx = bx - ax, vy = by - ay;
  double wx = px - ax, wy = py - ay;
  double vv = vx * vx + vy * vy;
  double t = vv > 0.0 ? (wx * vx + wy * vy) / vv : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  double dx = wx - t * vx, dy = wy - t * vy;
  return std::sqrt(dx * dx + dy * dy);
}

void sort_points(PersistenceDiagram& dgm) {
  std::sort(dgm.points.begin(), dgm.points.end(), [](const DiagramPoint& a, const DiagramPoint& b) {
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.death < b.death;
  });
}

}  // namespace

double ShapeSpec::value(PointView x) const {
  // First region whose closure contains x; regions are ordered so this
  // realizes the boundary-value convention.
  int best = -1;
  double best_sd = kInf;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    double sd = regions[i].signed_distance(x);
    if (sd <= 0.0) return regions[i].piece_value(x);
    if (sd < best_sd) {
      best_sd = sd;
      best = static_cast<int>(i);
    }
  }
  // Floating-point sliver between regions: take the nearest one.
  require(best >= 0, "shape: no region covers the query point");
  return regions[best].piece_value(x);
}

void ShapeSpec::validate() const {
  require(dim >= 1 && dim <= kMaxDim, "shape: dim out of range");
  require(!regions.empty(), "shape: no regions");
  require(jump_floor >= 0.0, "shape: negative jump floor");
  require(mu >= 0.0 && mu <= 1.0, "shape: mu outside [0, 1]");
  require(reach_mu >= 0.0, "shape: negative reach");
  require(lipschitz >= 0.0, "shape: negative modulus slope");
  require(betti.size() == static_cast<std::size_t>(dim), "shape: betti vector must cover degrees 0..dim-1");
  require(static_cast<bool>(jump_distance), "shape: missing jump distance");
}

ShapeSpec make_circles(const std::vector<Disk>& disks, double jump_floor) {
  require(!disks.empty(), "circles: need at least one disk");
  require(jump_floor > 0.0, "circles: jump floor must be positive");
  for (const auto& d : disks) {
    require(d.radius > 0.0, "circles: radius must be positive");
    require(d.cx - d.radius > 0.0 && d.cx + d.radius < 1.0 && d.cy - d.radius > 0.0 &&
                d.cy + d.radius < 1.0,
            "circles: disk must lie strictly inside the unit square");
  }
  double min_gap = kInf;
  for (std::size_t i = 0; i < disks.size(); ++i)
    for (std::size_t j = i + 1; j < disks.size(); ++j) {
      double dx = disks[i].cx - disks[j].cx, dy = disks[i].cy - disks[j].cy;
      double gap = std::sqrt(dx * dx + dy * dy) - disks[i].radius - disks[j].radius;
      require(gap > 0.0, "circles: disks must be strictly disjoint");
      min_gap = std::min(min_gap, gap);
    }

  ShapeSpec spec;
  spec.name = disks.size() == 2 ? "two_circles" : "circles";
  spec.dim = 2;
  spec.jump_floor = jump_floor;
  spec.mu = 1.0;  // circles are smooth; offsets behave like tubes up to the gap scale
  double min_radius = kInf;
  for (const auto& d : disks) min_radius = std::min(min_radius, d.radius);
  spec.reach_mu = disks.size() > 1 ? std::min(min_radius, min_gap / 2.0) : min_radius;
  spec.lipschitz = 0.0;

  // Complement region first: boundary points take the outside value 0.
  ShapeRegion outside;
  outside.signed_distance = [disks](PointView x) {
    double sd = kInf;
    for (const auto& d : disks) {
      double c[2] = {d.cx, d.cy};
      sd = std::min(sd, std::sqrt(dist2(x, c, 2)) - d.radius);
    }
    return -sd;
  };
  outside.piece_value = [](PointView) { return 0.0; };
  spec.regions.push_back(outside);
  for (const auto& d : disks) {
    ShapeRegion inside;
    inside.signed_distance = [d](PointView x) {
      double c[2] = {d.cx, d.cy};
      return std::sqrt(dist2(x, c, 2)) - d.radius;
    };
    inside.piece_value = [jump_floor](PointView) { return jump_floor; };
    spec.regions.push_back(inside);
  }

  spec.jump_distance = [disks](PointView x) {
    double dist = kInf;
    for (const auto& d : disks) {
      double c[2] = {d.cx, d.cy};
      dist = std::min(dist, std::abs(std::sqrt(dist2(x, c, 2)) - d.radius));
    }
    return dist;
  };

  int k = static_cast<int>(disks.size());
  spec.betti = {k, k};

  // Offset diagram in closed form for one or two circles: each circle's hole
  // fills at its radius; with two circles the components merge at half the
  // boundary gap. No enclosed pockets appear for disjoint pairs.
  if (k <= 2) {
    spec.has_analytic_diagram = true;
    PersistenceDiagram d0{0, {}};
    PersistenceDiagram d1{1, {}};
    if (k == 2) d0.points.push_back({0.0, min_gap / 2.0});
    d0.points.push_back({0.0, kInfiniteDeath});
    for (const auto& d : disks) d1.points.push_back({0.0, d.radius});
    sort_points(d0);
    sort_points(d1);
    spec.analytic_diagram = {d0, d1};
  }

  spec.params["disks"] = nlohmann::json::array();
  for (const auto& d : disks) spec.params["disks"].push_back({d.cx, d.cy, d.radius});
  spec.params["jump_floor"] = jump_floor;
  return spec;
}

ShapeSpec make_halfspace_step(int dim, double jump_floor) {
  require(dim >= 1 && dim <= kMaxDim, "halfspace: dim out of range");
  require(jump_floor > 0.0, "halfspace: jump floor must be positive");

  ShapeSpec spec;
  spec.name = "halfspace";
  spec.dim = dim;
  spec.jump_floor = jump_floor;
  spec.mu = 1.0;
  spec.reach_mu = 0.5;
  spec.lipschitz = 0.0;

  ShapeRegion low;  // designated: boundary takes the low value
  low.signed_distance = [](PointView x) { return x[0] - 0.5; };
  low.piece_value = [](PointView) { return 0.0; };
  ShapeRegion high;
  high.signed_distance = [](PointView x) { return 0.5 - x[0]; };
  high.piece_value = [jump_floor](PointView) { return jump_floor; };
  spec.regions = {low, high};

  spec.jump_distance = [](PointView x) { return std::abs(x[0] - 0.5); };

  spec.betti.assign(dim, 0);
  spec.betti[0] = 1;

  // A hyperplane slab stays one contractible component at every offset.
  spec.has_analytic_diagram = true;
  spec.analytic_diagram.resize(dim);
  for (int s = 0; s < dim; ++s) spec.analytic_diagram[s].degree = s;
  spec.analytic_diagram[0].points.push_back({0.0, kInfiniteDeath});

  spec.params["dim"] = dim;
  spec.params["jump_floor"] = jump_floor;
  return spec;
}

ShapeSpec make_halfspace_step_lipschitz(int dim, double jump_floor, double slope) {
  require(slope >= 0.0, "halfspace_lipschitz: slope must be nonnegative");
  ShapeSpec spec = make_halfspace_step(dim, jump_floor);
  spec.name = "halfspace_lipschitz";
  spec.lipschitz = slope;
  // Ramps keep the cross-boundary jump exactly at the floor everywhere.
  spec.regions[0].piece_value = [slope](PointView x) { return slope * (0.5 - x[0]); };
  spec.regions[1].piece_value = [jump_floor, slope](PointView x) {
    return jump_floor + slope * (x[0] - 0.5);
  };
  spec.params["slope"] = slope;
  return spec;
}

ShapeSpec make_constant(int dim, double level) {
  require(dim >= 1 && dim <= kMaxDim, "constant: dim out of range");
  ShapeSpec spec;
  spec.name = "constant";
  spec.dim = dim;
  spec.jump_floor = 0.0;
  spec.mu = 1.0;
  spec.reach_mu = 0.0;
  spec.lipschitz = 0.0;
  ShapeRegion all;
  all.signed_distance = [](PointView) { return -1.0; };
  all.piece_value = [level](PointView) { return level; };
  spec.regions = {all};
  spec.jump_distance = [](PointView) { return kInf; };
  spec.betti.assign(dim, 0);
  spec.has_analytic_diagram = true;
  spec.analytic_diagram.resize(dim);
  for (int s = 0; s < dim; ++s) spec.analytic_diagram[s].degree = s;
  spec.params["dim"] = dim;
  spec.params["level"] = level;
  return spec;
}

ShapeSpec make_pyramid(double extent, double angle, double jump_floor, int min_resolution) {
  require(min_resolution >= 8, "pyramid: resolution guard too small");
  require(extent > 2.0 / min_resolution,
          "pyramid: extent must exceed 2/" + std::to_string(min_resolution) +
              " to survive rasterization");
  require(angle > 0.0 && angle < std::numbers::pi / 2.0, "pyramid: angle must lie in (0, pi/2)");
  require(jump_floor > 0.0, "pyramid: jump floor must be positive");

  double off = 2.0 * extent;               // apex sits at x = 1/2 + off
  double w = off * std::tan(angle);        // base half-width on the plane
  require(0.5 + off < 1.0, "pyramid: apex leaves the unit square");
  require(w < 0.5, "pyramid: base leaves the unit square");

  double ax = 0.5, ay = 0.5 - w;   // base corner below
  double bx = 0.5, by = 0.5 + w;   // base corner above
  double cx = 0.5 + off, cy = 0.5; // apex

  ShapeSpec spec;
  spec.name = "pyramid";
  spec.dim = 2;
  spec.jump_floor = jump_floor;
  // Regularity at the apex wedge: the recorded bound is cos(2*angle) while
  // positive; past angle = pi/4 that expression goes nonpositive and the
  // generalized-gradient bound along the apex bisector, sin(angle), takes
  // over. Reach is limited by the base gap.
  double mu = std::cos(2.0 * angle);
  if (mu <= 0.0) mu = std::sin(angle);
  spec.mu = std::min(mu, 1.0);
  spec.reach_mu = w;
  spec.lipschitz = 0.0;

  auto tri_signed = [ax, ay, bx, by, cx, cy](double px, double py) {
    // Signed distance to the closed triangle A,B,C: negative inside.
    auto side = [](double ox, double oy, double ex, double ey, double qx, double qy) {
      return (ex - ox) * (qy - oy) - (ey - oy) * (qx - ox);
    };
    double s1 = side(ax, ay, bx, by, px, py);
    double s2 = side(bx, by, cx, cy, px, py);
    double s3 = side(cx, cy, ax, ay, px, py);
    bool inside = (s1 >= 0 && s2 >= 0 && s3 >= 0) || (s1 <= 0 && s2 <= 0 && s3 <= 0);
    double d = std::min({segment_distance(px, py, ax, ay, bx, by),
                         segment_distance(px, py, bx, by, cx, cy),
                         segment_distance(px, py, cx, cy, ax, ay)});
    return inside ? -d : d;
  };

  // Low region is the halfspace united with the solid triangle; boundary
  // points take its value.
  ShapeRegion low;
  low.signed_distance = [tri_signed](PointView x) {
    return std::min(x[0] - 0.5, tri_signed(x[0], x[1]));
  };
  low.piece_value = [](PointView) { return 0.0; };
  ShapeRegion high;
  high.signed_distance = [tri_signed](PointView x) {
    return -std::min(x[0] - 0.5, tri_signed(x[0], x[1]));
  };
  high.piece_value = [jump_floor](PointView) { return jump_floor; };
  spec.regions = {low, high};

  // Jump set: the plane outside the base gap plus the two lateral edges.
  spec.jump_distance = [ax, ay, bx, by, cx, cy](PointView x) {
    double px = x[0], py = x[1];
    double d = std::min({segment_distance(px, py, 0.5, 0.0, ax, ay),
                         segment_distance(px, py, bx, by, 0.5, 1.0),
                         segment_distance(px, py, ax, ay, cx, cy),
                         segment_distance(px, py, bx, by, cx, cy)});
    return d;
  };

  spec.betti = {1, 0};  // a tent over a line: connected, no loop

  spec.params["extent"] = extent;
  spec.params["angle"] = angle;
  spec.params["jump_floor"] = jump_floor;
  spec.params["min_resolution"] = min_resolution;
  return spec;
}

ShapeSpec make_shape(const std::string& name, const nlohmann::json& params) {
  auto floor_of = [&params](double fallback) {
    return params.value("jump_floor", fallback);
  };
  if (name == "two_circles" || name == "circles" || name == "circle") {
    std::vector<Disk> disks;
    if (params.contains("disks")) {
      for (const auto& row : params.at("disks"))
        disks.push_back({row.at(0).get<double>(), row.at(1).get<double>(), row.at(2).get<double>()});
    } else if (name == "circle") {
      disks = {{0.5, 0.5, params.value("radius", 0.2)}};
    } else {
      disks = {{0.3, 0.5, 0.15}, {0.7, 0.5, 0.15}};
    }
    return make_circles(disks, floor_of(4.0));
  }
  if (name == "halfspace") return make_halfspace_step(params.value("dim", 2), floor_of(4.0));
  if (name == "halfspace_lipschitz")
    return make_halfspace_step_lipschitz(params.value("dim", 2), floor_of(4.0),
                                         params.value("slope", 1.0));
  if (name == "constant") return make_constant(params.value("dim", 2), params.value("level", 0.0));
  if (name == "pyramid")
    return make_pyramid(params.value("extent", 0.1), params.value("angle", std::numbers::pi / 3.0),
                        floor_of(4.0), params.value("min_resolution", 256));
  throw std::invalid_argument("unknown shape: " + name);
}

std::vector<std::string> shape_catalog() {
  return {"two_circles", "circle", "circles", "halfspace", "halfspace_lipschitz", "constant",
          "pyramid"};
}

ObservationGrid sample_to_grid(const ShapeSpec& spec, int side, double sigma,
                               std::uint64_t seed) {
  spec.validate();
  require(side >= 2, "sample_to_grid: need at least two sites per axis");
  require(sigma >= 0.0, "sample_to_grid: negative sigma");

  ObservationGrid obs;
  obs.dim = spec.dim;
  obs.side = side;
  obs.noise_sigma = sigma;
  obs.seed = seed;
  obs.values.resize(obs.sample_count());

  GaussianStream noise(seed);
  double x[kMaxDim];
  int c[kMaxDim];
  LatticeShape shape = obs.lattice();
  for (std::size_t i = 0; i < obs.values.size(); ++i) {
    shape.unflatten(i, c);
    for (int k = 0; k < spec.dim; ++k) x[k] = (c[k] + 0.5) / side;
    obs.values[i] = spec.value({x, static_cast<std::size_t>(spec.dim)}) + sigma * noise.next();
  }
  return obs;
}

CubicalMask rasterize_jumpset(const ShapeSpec& spec, int resolution) {
  spec.validate();
  require(resolution >= 8, "rasterize_jumpset: resolution below 8 cannot hold any catalog shape");

  CubicalMask mask;
  mask.dim = spec.dim;
  mask.resolution = resolution;
  mask.bits.assign(mask.cell_count(), 0);

  double tol = mask.cell_diagonal() / 2.0;
  double x[kMaxDim];
  for (std::size_t i = 0; i < mask.bits.size(); ++i) {
    mask.cell_center(i, x);
    if (spec.jump_distance({x, static_cast<std::size_t>(spec.dim)}) <= tol) mask.bits[i] = 1;
  }
  return mask;
}

ShapeSelfTestReport shape_self_test(const ShapeSpec& spec, int resolution) {
  spec.validate();
  require(resolution >= 8, "shape_self_test: resolution too small");
  ShapeSelfTestReport report;
  std::ostringstream detail;

  // 1. Region closures cover the cube: some region is within zero signed
  // distance of every dense sample point.
  report.covers = true;
  LatticeShape lat{spec.dim, resolution};
  double x[kMaxDim];
  int c[kMaxDim];
  std::size_t total = lat.size();
  for (std::size_t i = 0; i < total && report.covers; ++i) {
    lat.unflatten(i, c);
    for (int k = 0; k < spec.dim; ++k) x[k] = (c[k] + 0.5) / resolution;
    double best = kInf;
    for (const auto& region : spec.regions)
      best = std::min(best, region.signed_distance({x, static_cast<std::size_t>(spec.dim)}));
    if (!(best <= 1e-9)) {
      report.covers = false;
      detail << "uncovered point at sample " << i << "; ";
    }
  }

  // 2. Every observed jump between adjacent samples clears the declared
  // floor once the within-piece modulus over one step is discounted.
  report.jump_floor_ok = true;
  double step = 1.0 / resolution;
  double modulus = spec.lipschitz * step;
  for (std::size_t i = 0; i < total && report.jump_floor_ok; ++i) {
    lat.unflatten(i, c);
    for (int k = 0; k < spec.dim; ++k) x[k] = (c[k] + 0.5) / resolution;
    double v0 = spec.value({x, static_cast<std::size_t>(spec.dim)});
    for (int k = 0; k < spec.dim; ++k) {
      if (c[k] + 1 >= resolution) continue;
      x[k] += step;
      double v1 = spec.value({x, static_cast<std::size_t>(spec.dim)});
      x[k] -= step;
      double d = std::abs(v1 - v0);
      if (d > modulus + 1e-9 && d < spec.jump_floor - modulus - 1e-9) {
        report.jump_floor_ok = false;
        detail << "cross-boundary gap " << d << " below floor " << spec.jump_floor << "; ";
        break;
      }
    }
  }

  // 3. Declared Betti numbers against a brute-force count on a fine raster.
  report.betti_ok = true;
  CubicalMask raster = rasterize_jumpset(spec, resolution);
  if (raster.empty()) {
    for (int b : spec.betti)
      if (b != 0) report.betti_ok = false;
    if (!report.betti_ok) detail << "empty raster but nonzero declared betti; ";
  } else {
    int comps = bruteforce::component_count(raster);
    if (comps != spec.betti[0]) {
      report.betti_ok = false;
      detail << "component count " << comps << " != declared " << spec.betti[0] << "; ";
    }
    if (spec.dim >= 2 && report.betti_ok) {
      auto diagrams = persistence(build_filtration(raster), spec.dim - 1);
      auto counts = betti_estimate(diagrams, 0.0);
      for (int s = 1; s < spec.dim; ++s) {
        if (counts[s].count != spec.betti[s]) {
          report.betti_ok = false;
          detail << "degree " << s << " count " << counts[s].count << " != declared "
                 << spec.betti[s] << "; ";
        }
      }
    }
  }

  report.detail = detail.str();
  return report;
}

}  // namespace jumptopo
