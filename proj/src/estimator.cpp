#include "jumptopo/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jumptopo {

namespace {

// Offsets (as coordinate deltas) of every cell whose closed box lies within
// Euclidean distance `radius` of the origin cell's box. Boxes with per-axis
// index gap g are (g-1)+ cell widths apart along that axis, so the test is an
// integer sum of squares against (radius * m)^2.
std::vector<std::vector<int>> neighborhood_offsets(int dim, int cells_per_axis, double radius) {
  double rm = radius * cells_per_axis;
  double rm2 = rm * rm;
  int reach = static_cast<int>(rm) + 1;
  reach = std::min(reach, cells_per_axis - 1);

  std::vector<std::vector<int>> offsets;
  std::vector<int> delta(dim, -reach);
  while (true) {
    long long gap2 = 0;
    for (int k = 0; k < dim; ++k) {
      long long g = std::max(0, std::abs(delta[k]) - 1);
      gap2 += g * g;
    }
    if (static_cast<double>(gap2) <= rm2) offsets.push_back(delta);
    int k = dim - 1;
    while (k >= 0 && delta[k] == reach) delta[k--] = -reach;
    if (k < 0) break;
    ++delta[k];
  }
  return offsets;
}

}  // namespace

HistogramField build_histogram(const ObservationGrid& obs, double cell_width) {
  obs.validate();
  require(cell_width > 0.0 && cell_width <= 1.0, "histogram: cell width must lie in (0, 1]");

  HistogramField field;
  field.dim = obs.dim;
  field.cells_per_axis = static_cast<int>(std::llround(1.0 / cell_width));
  field.cells_per_axis = std::max(field.cells_per_axis, 1);

  std::size_t cells = field.lattice().size();
  std::vector<double> sums(cells, 0.0);
  field.counts.assign(cells, 0);

  // Cell assignment in exact integer arithmetic: sample i sits at
  // (2i+1)/(2N), so its cell index is floor((2i+1)m / 2N), with samples
  // exactly on an interior cell boundary assigned to the lower cell.
  int side = obs.side;
  int m = field.cells_per_axis;
  LatticeShape sample_lat = obs.lattice();
  LatticeShape cell_lat = field.lattice();
  int sc[kMaxDim];
  int cc[kMaxDim];
  long long den = 2LL * side;
  for (std::size_t i = 0; i < obs.values.size(); ++i) {
    sample_lat.unflatten(i, sc);
    for (int k = 0; k < obs.dim; ++k) {
      long long num = (2LL * sc[k] + 1) * m;
      long long c = num / den;
      if (num % den == 0 && c > 0) --c;
      cc[k] = static_cast<int>(c);
    }
    std::size_t cell = cell_lat.flatten(cc);
    sums[cell] += obs.values[i];
    field.counts[cell] += 1;
  }

  field.means.resize(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    if (field.counts[c] == 0)
      throw std::runtime_error(
          "histogram: a cell captured no sample (cell width below the data-grid step)");
    field.means[c] = sums[c] / static_cast<double>(field.counts[c]);
  }
  return field;
}

double local_range(const HistogramField& field, std::size_t cell, double radius) {
  require(radius >= 0.0, "local_range: radius must be nonnegative");
  require(cell < field.means.size(), "local_range: cell index out of range");
  auto offsets = neighborhood_offsets(field.dim, field.cells_per_axis, radius);

  LatticeShape lat = field.lattice();
  int base[kMaxDim];
  int probe[kMaxDim];
  lat.unflatten(cell, base);
  double lo = field.means[cell];
  double hi = lo;
  for (const auto& delta : offsets) {
    bool in = true;
    for (int k = 0; k < field.dim; ++k) {
      probe[k] = base[k] + delta[k];
      if (probe[k] < 0 || probe[k] >= field.cells_per_axis) {
        in = false;
        break;
      }
    }
    if (!in) continue;
    double v = field.means[lat.flatten(probe)];
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo;
}

std::vector<double> local_range_field(const HistogramField& field, double radius) {
  require(radius >= 0.0, "local_range: radius must be nonnegative");
  auto offsets = neighborhood_offsets(field.dim, field.cells_per_axis, radius);

  LatticeShape lat = field.lattice();
  std::vector<double> out(field.means.size());
  int base[kMaxDim];
  int probe[kMaxDim];
  for (std::size_t cell = 0; cell < field.means.size(); ++cell) {
    lat.unflatten(cell, base);
    double lo = field.means[cell];
    double hi = lo;
    for (const auto& delta : offsets) {
      bool in = true;
      for (int k = 0; k < field.dim; ++k) {
        probe[k] = base[k] + delta[k];
        if (probe[k] < 0 || probe[k] >= field.cells_per_axis) {
          in = false;
          break;
        }
      }
      if (!in) continue;
      double v = field.means[lat.flatten(probe)];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    out[cell] = hi - lo;
  }
  return out;
}

CubicalMask estimate_jumpset(const HistogramField& field, double radius, double jump_floor) {
  require(jump_floor > 0.0, "estimate_jumpset: jump floor must be positive");
  double threshold = jump_floor / 2.0;

  CubicalMask mask;
  mask.dim = field.dim;
  mask.resolution = field.cells_per_axis;
  mask.bits.assign(mask.cell_count(), 0);

  auto ranges = local_range_field(field, radius);
  for (std::size_t c = 0; c < ranges.size(); ++c)
    if (ranges[c] >= threshold) mask.bits[c] = 1;
  return mask;
}

EstimateResult estimate_pipeline(const ObservationGrid& obs, const PipelineOptions& opt) {
  obs.validate();
  require(opt.jump_floor > 0.0, "pipeline: jump floor must be positive");
  std::size_t n = obs.sample_count();

  EstimateResult result;
  double h;
  if (opt.cell_width_override.has_value()) {
    h = *opt.cell_width_override;
    require(h > 0.0 && h <= 1.0, "pipeline: cell width override must lie in (0, 1]");
  } else {
    h = calibrate_cell_width(n, obs.dim, opt.sigma, opt.jump_floor, opt.sn, &result.notes);
  }
  double r = opt.radius_override.has_value()
                 ? *opt.radius_override
                 : calibrate_radius(n, h, obs.dim, opt.mu, opt.sn);
  require(r >= 0.0, "pipeline: radius must be nonnegative");

  result.params.cell_width = h;
  result.params.radius = r;
  result.params.survival_offset = calibrate_survival_offset(n, r, opt.mu, opt.sn);
  result.params.jump_threshold = opt.jump_floor / 2.0;
  result.params.sigma_known = opt.sigma.has_value();
  result.params.mu_known = opt.mu.has_value();
  result.params.sn = opt.sn;

  result.field = build_histogram(obs, h);
  result.mask = estimate_jumpset(result.field, r, opt.jump_floor);
  return result;
}

double histogram_sup_error_off_jump(const HistogramField& field, const ShapeSpec& spec) {
  spec.validate();
  require(field.dim == spec.dim, "sup error: dimension mismatch");
  LatticeShape lat = field.lattice();
  double half_diag = std::sqrt(static_cast<double>(field.dim)) / (2.0 * field.cells_per_axis);
  double x[kMaxDim];
  int c[kMaxDim];
  double worst = 0.0;
  for (std::size_t cell = 0; cell < field.means.size(); ++cell) {
    lat.unflatten(cell, c);
    for (int k = 0; k < field.dim; ++k) x[k] = (c[k] + 0.5) / field.cells_per_axis;
    PointView xv{x, static_cast<std::size_t>(field.dim)};
    // Distance beyond the half diagonal guarantees the whole closed cell
    // avoids the jump set.
    if (spec.jump_distance(xv) <= half_diag) continue;
    worst = std::max(worst, std::abs(field.means[cell] - spec.value(xv)));
  }
  return worst;
}

}  // namespace jumptopo
