#include "jumptopo/bruteforce.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace jumptopo {
namespace bruteforce {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

DistanceField distance_field(const CubicalMask& mask) {
  mask.validate();
  DistanceField field;
  field.dim = mask.dim;
  field.resolution = mask.resolution;
  std::size_t total = mask.cell_count();
  field.values.assign(total, field.empty_sentinel());
  if (mask.empty()) return field;

  LatticeShape lat = mask.lattice();
  std::vector<std::vector<int>> set_cells;
  int c[kMaxDim];
  for (std::size_t i = 0; i < total; ++i) {
    if (!mask.bits[i]) continue;
    lat.unflatten(i, c);
    set_cells.emplace_back(c, c + mask.dim);
  }
  for (std::size_t i = 0; i < total; ++i) {
    lat.unflatten(i, c);
    double best = kInf;
    for (const auto& s : set_cells) {
      double d2 = 0.0;
      for (int k = 0; k < mask.dim; ++k) {
        double d = c[k] - s[k];
        d2 += d * d;
      }
      best = std::min(best, d2);
    }
    field.values[i] = std::sqrt(best) * mask.cell_size();
  }
  return field;
}

std::vector<PersistenceDiagram> persistence(const CubicalFiltration& filt, int max_degree) {
  require(max_degree >= 0 && max_degree <= filt.dim,
          "bruteforce persistence: max degree out of range");
  std::size_t n = filt.cell_count();

  std::vector<std::uint8_t> cell_dim(n);
  for (std::size_t i = 0; i < n; ++i)
    cell_dim[i] = static_cast<std::uint8_t>(filt.cell_dimension(i));
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (filt.values[a] != filt.values[b]) return filt.values[a] < filt.values[b];
    if (cell_dim[a] != cell_dim[b]) return cell_dim[a] < cell_dim[b];
    return a < b;
  });
  std::vector<std::uint32_t> pos(n);
  for (std::size_t r = 0; r < n; ++r) pos[order[r]] = static_cast<std::uint32_t>(r);

  // One full left-to-right reduction over every dimension at once.
  LatticeShape lat = filt.lattice();
  std::vector<std::vector<std::uint32_t>> columns(n);
  std::vector<std::int64_t> pivot_owner(n, -1);
  std::vector<std::uint8_t> is_death(n, 0), is_paired_birth(n, 0);

  int c[kMaxDim];
  std::vector<std::uint32_t> scratch;
  for (std::size_t r = 0; r < n; ++r) {
    std::uint32_t cell = order[r];
    std::vector<std::uint32_t> col;
    lat.unflatten(cell, c);
    for (int k = 0; k < filt.dim; ++k) {
      if (!(c[k] & 1)) continue;
      c[k] -= 1;
      col.push_back(pos[lat.flatten(c)]);
      c[k] += 2;
      col.push_back(pos[lat.flatten(c)]);
      c[k] -= 1;
    }
    std::sort(col.begin(), col.end());
    while (!col.empty() && pivot_owner[col.back()] >= 0) {
      const auto& other = columns[static_cast<std::size_t>(pivot_owner[col.back()])];
      scratch.clear();
      std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(),
                                    std::back_inserter(scratch));
      col.swap(scratch);
    }
    if (!col.empty()) {
      pivot_owner[col.back()] = static_cast<std::int64_t>(r);
      is_death[cell] = 1;
      is_paired_birth[order[col.back()]] = 1;
    }
    columns[r] = std::move(col);
  }

  std::vector<PersistenceDiagram> diagrams(static_cast<std::size_t>(max_degree) + 1);
  for (int s = 0; s <= max_degree; ++s) diagrams[s].degree = s;
  for (std::size_t r = 0; r < n; ++r) {
    std::uint32_t cell = order[r];
    if (is_death[cell]) {
      std::uint32_t birth_cell = order[columns[r].back()];
      int degree = cell_dim[birth_cell];
      if (degree <= max_degree && filt.values[cell] > filt.values[birth_cell])
        diagrams[degree].points.push_back({filt.values[birth_cell], filt.values[cell]});
    } else if (!is_paired_birth[cell]) {
      int degree = cell_dim[cell];
      if (degree <= max_degree)
        diagrams[degree].points.push_back({filt.values[cell], kInfiniteDeath});
    }
  }
  for (auto& dgm : diagrams) {
    std::sort(dgm.points.begin(), dgm.points.end(),
              [](const DiagramPoint& a, const DiagramPoint& b) {
                if (a.birth != b.birth) return a.birth < b.birth;
                return a.death < b.death;
              });
  }
  return diagrams;
}

namespace {

// Min over assignments of finite points (each A point takes an unused B point
// or its diagonal; leftover B points take their diagonals) of the max cost.
double exhaustive_finite(const std::vector<DiagramPoint>& A, const std::vector<DiagramPoint>& B,
                         std::vector<std::uint8_t>& used, std::size_t i) {
  if (i == A.size()) {
    double worst = 0.0;
    for (std::size_t j = 0; j < B.size(); ++j)
      if (!used[j]) worst = std::max(worst, (B[j].death - B[j].birth) / 2.0);
    return worst;
  }
  double best = std::max(
      (A[i].death - A[i].birth) / 2.0, exhaustive_finite(A, B, used, i + 1));
  for (std::size_t j = 0; j < B.size(); ++j) {
    if (used[j]) continue;
    used[j] = 1;
    double cost = std::max(std::abs(A[i].birth - B[j].birth), std::abs(A[i].death - B[j].death));
    double rest = exhaustive_finite(A, B, used, i + 1);
    used[j] = 0;
    best = std::min(best, std::max(cost, rest));
  }
  return best;
}

}  // namespace

double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b) {
  require(a.degree == b.degree, "bruteforce bottleneck: degree mismatch");
  std::vector<DiagramPoint> fa, fb;
  std::vector<double> ea, eb;
  for (const auto& p : a.points) {
    if (std::isinf(p.death))
      ea.push_back(p.birth);
    else if (p.death > p.birth)
      fa.push_back(p);
  }
  for (const auto& p : b.points) {
    if (std::isinf(p.death))
      eb.push_back(p.birth);
    else if (p.death > p.birth)
      fb.push_back(p);
  }
  if (ea.size() != eb.size()) return kInf;
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  double essential = 0.0;
  for (std::size_t i = 0; i < ea.size(); ++i)
    essential = std::max(essential, std::abs(ea[i] - eb[i]));

  std::vector<std::uint8_t> used(fb.size(), 0);
  return std::max(essential, exhaustive_finite(fa, fb, used, 0));
}

double hausdorff(const CubicalMask& a, const CubicalMask& b) {
  a.validate();
  b.validate();
  require(a.dim == b.dim && a.resolution == b.resolution,
          "bruteforce hausdorff: masks must share a grid");
  require(!a.empty() && !b.empty(), "bruteforce hausdorff: empty mask");

  auto centers = [](const CubicalMask& mask) {
    std::vector<double> pts;
    double x[kMaxDim];
    for (std::size_t i = 0; i < mask.bits.size(); ++i) {
      if (!mask.bits[i]) continue;
      mask.cell_center(i, x);
      pts.insert(pts.end(), x, x + mask.dim);
    }
    return pts;
  };
  std::vector<double> pa = centers(a);
  std::vector<double> pb = centers(b);
  int d = a.dim;

  auto directed = [d](const std::vector<double>& from, const std::vector<double>& to) {
    double worst = 0.0;
    for (std::size_t i = 0; i < from.size(); i += d) {
      double best = kInf;
      for (std::size_t j = 0; j < to.size(); j += d) {
        double s = 0.0;
        for (int k = 0; k < d; ++k) {
          double diff = from[i + k] - to[j + k];
          s += diff * diff;
        }
        best = std::min(best, s);
      }
      worst = std::max(worst, std::sqrt(best));
    }
    return worst;
  };
  return std::max(directed(pa, pb), directed(pb, pa));
}

int component_count(const CubicalMask& mask) {
  mask.validate();
  LatticeShape lat = mask.lattice();
  std::vector<std::uint8_t> seen(mask.bits.size(), 0);
  std::vector<std::size_t> stack;
  int c[kMaxDim];
  int nc[kMaxDim];
  int components = 0;
  for (std::size_t i = 0; i < mask.bits.size(); ++i) {
    if (!mask.bits[i] || seen[i]) continue;
    ++components;
    seen[i] = 1;
    stack.assign(1, i);
    while (!stack.empty()) {
      std::size_t cur = stack.back();
      stack.pop_back();
      lat.unflatten(cur, c);
      // Every cell sharing at least a vertex is a neighbor.
      int delta[kMaxDim];
      for (int k = 0; k < mask.dim; ++k) delta[k] = -1;
      while (true) {
        bool self = true;
        bool in = true;
        for (int k = 0; k < mask.dim; ++k) {
          if (delta[k] != 0) self = false;
          nc[k] = c[k] + delta[k];
          if (nc[k] < 0 || nc[k] >= mask.resolution) in = false;
        }
        if (!self && in) {
          std::size_t nb = lat.flatten(nc);
          if (mask.bits[nb] && !seen[nb]) {
            seen[nb] = 1;
            stack.push_back(nb);
          }
        }
        int k = mask.dim - 1;
        while (k >= 0 && delta[k] == 1) delta[k--] = -1;
        if (k < 0) break;
        ++delta[k];
      }
    }
  }
  return components;
}

}  // namespace bruteforce
}  // namespace jumptopo
