#include "jumptopo/distance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace jumptopo {

namespace {

// Stands in for infinity during the transform; differences between two such
// values stay harmless and any path through a set cell beats it.
constexpr double kFar = 1e20;

// Exact 1D squared-distance transform by lower envelope of parabolas.
// f holds squared distances on entry, d the transformed row on exit.
void envelope_1d(const double* f, double* d, int n, int* v, double* z) {
  int k = 0;
  v[0] = 0;
  z[0] = -kFar;
  z[1] = kFar;
  for (int q = 1; q < n; ++q) {
    double s = 0.0;
    while (true) {
      int p = v[k];
      s = ((f[q] + static_cast<double>(q) * q) - (f[p] + static_cast<double>(p) * p)) /
          (2.0 * q - 2.0 * p);
      if (s <= z[k]) {
        --k;
      } else {
        break;
      }
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kFar;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    double dq = static_cast<double>(q) - v[k];
    d[q] = dq * dq + f[v[k]];
  }
}

}  // namespace

DistanceField distance_transform(const CubicalMask& mask) {
  mask.validate();
  DistanceField field;
  field.dim = mask.dim;
  field.resolution = mask.resolution;

  if (mask.empty()) {
    field.values.assign(mask.cell_count(), field.empty_sentinel());
    return field;
  }

  int m = mask.resolution;
  std::size_t total = mask.cell_count();
  std::vector<double> sq(total);
  for (std::size_t i = 0; i < total; ++i) sq[i] = mask.bits[i] ? 0.0 : kFar;

  // One separable pass per axis; each pass is exact, so the composition is
  // the exact squared Euclidean distance in cell units.
  std::vector<double> row(m), out(m);
  std::vector<int> v(m);
  std::vector<double> z(m + 1);
  LatticeShape lat = mask.lattice();
  int coords[kMaxDim];
  for (int axis = 0; axis < mask.dim; ++axis) {
    std::size_t stride = 1;
    for (int k = mask.dim - 1; k > axis; --k) stride *= static_cast<std::size_t>(m);
    // Enumerate all lines along `axis`: iterate every cell whose coordinate
    // on that axis is zero.
    for (std::size_t i = 0; i < total; ++i) {
      lat.unflatten(i, coords);
      if (coords[axis] != 0) continue;
      for (int q = 0; q < m; ++q) row[q] = sq[i + stride * static_cast<std::size_t>(q)];
      envelope_1d(row.data(), out.data(), m, v.data(), z.data());
      for (int q = 0; q < m; ++q) sq[i + stride * static_cast<std::size_t>(q)] = out[q];
    }
  }

  field.values.resize(total);
  double cell = mask.cell_size();
  for (std::size_t i = 0; i < total; ++i) field.values[i] = cell * std::sqrt(sq[i]);
  return field;
}

CubicalMask offset(const CubicalMask& mask, double beta) {
  require(beta >= 0.0, "offset: beta must be nonnegative");
  // The offset of the empty set is empty at every radius.
  if (mask.empty()) {
    CubicalMask out = mask;
    std::fill(out.bits.begin(), out.bits.end(), 0);
    return out;
  }
  DistanceField field = distance_transform(mask);
  CubicalMask out;
  out.dim = mask.dim;
  out.resolution = mask.resolution;
  out.bits.resize(mask.cell_count());
  for (std::size_t i = 0; i < out.bits.size(); ++i)
    out.bits[i] = field.values[i] <= beta ? 1 : 0;
  return out;
}

namespace {

CubicalMask refine(const CubicalMask& mask, int factor) {
  CubicalMask out;
  out.dim = mask.dim;
  out.resolution = mask.resolution * factor;
  out.bits.resize(out.cell_count());
  LatticeShape fine = out.lattice();
  LatticeShape coarse = mask.lattice();
  int fc[kMaxDim];
  int cc[kMaxDim];
  for (std::size_t i = 0; i < out.bits.size(); ++i) {
    fine.unflatten(i, fc);
    for (int k = 0; k < out.dim; ++k) cc[k] = fc[k] / factor;
    out.bits[i] = mask.bits[coarse.flatten(cc)];
  }
  return out;
}

double directed_distance(const CubicalMask& from, const DistanceField& to_field) {
  double worst = 0.0;
  for (std::size_t i = 0; i < from.bits.size(); ++i)
    if (from.bits[i]) worst = std::max(worst, to_field.values[i]);
  return worst;
}

}  // namespace

double hausdorff(const CubicalMask& a, const CubicalMask& b) {
  a.validate();
  b.validate();
  require(a.dim == b.dim, "hausdorff: dimension mismatch");
  if (a.empty() || b.empty())
    throw std::runtime_error("hausdorff: undefined for an empty mask");

  if (a.resolution != b.resolution) {
    if (a.resolution % b.resolution == 0)
      return hausdorff(a, refine(b, a.resolution / b.resolution));
    if (b.resolution % a.resolution == 0)
      return hausdorff(refine(a, b.resolution / a.resolution), b);
    throw std::invalid_argument(
        "hausdorff: resolutions must be equal or divide evenly for exact subdivision");
  }

  DistanceField to_a = distance_transform(a);
  DistanceField to_b = distance_transform(b);
  return std::max(directed_distance(a, to_b), directed_distance(b, to_a));
}

TruthDistanceReport hausdorff_to_truth(const CubicalMask& mask, const ShapeSpec& spec) {
  mask.validate();
  spec.validate();
  require(mask.dim == spec.dim, "hausdorff_to_truth: dimension mismatch");
  if (mask.empty()) throw std::runtime_error("hausdorff_to_truth: estimated mask is empty");

  TruthDistanceReport report;
  int m = mask.resolution;
  double sqrt_d = std::sqrt(static_cast<double>(mask.dim));
  report.slack = sqrt_d / (4.0 * m);

  // Mask to truth: exact distance from every set-cell center.
  double x[kMaxDim];
  std::vector<double> set_centers;
  for (std::size_t i = 0; i < mask.bits.size(); ++i) {
    if (!mask.bits[i]) continue;
    mask.cell_center(i, x);
    for (int k = 0; k < mask.dim; ++k) set_centers.push_back(x[k]);
    double d = spec.jump_distance({x, static_cast<std::size_t>(mask.dim)});
    if (std::isinf(d))
      throw std::runtime_error("hausdorff_to_truth: shape has an empty jump set");
    report.mask_to_truth = std::max(report.mask_to_truth, d);
  }

  // Truth to mask: dense sample of the jump set at four times the mask
  // resolution, each sample matched exactly against all set-cell centers.
  CubicalMask fine = rasterize_jumpset(spec, 4 * m);
  if (fine.empty()) throw std::runtime_error("hausdorff_to_truth: jump set rasterized empty");
  std::size_t n_set = set_centers.size() / mask.dim;
  for (std::size_t i = 0; i < fine.bits.size(); ++i) {
    if (!fine.bits[i]) continue;
    fine.cell_center(i, x);
    double best = 1e300;
    for (std::size_t j = 0; j < n_set; ++j) {
      double s = 0.0;
      const double* c = &set_centers[j * mask.dim];
      for (int k = 0; k < mask.dim; ++k) {
        double d = x[k] - c[k];
        s += d * d;
      }
      best = std::min(best, s);
    }
    report.truth_to_mask = std::max(report.truth_to_mask, std::sqrt(best));
  }

  report.hausdorff_distance = std::max(report.mask_to_truth, report.truth_to_mask);
  return report;
}

}  // namespace jumptopo
