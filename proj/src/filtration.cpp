#include "jumptopo/filtration.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#include "jumptopo/distance.hpp"

namespace jumptopo {

namespace {

void sort_points(PersistenceDiagram& dgm) {
  std::sort(dgm.points.begin(), dgm.points.end(), [](const DiagramPoint& a, const DiagramPoint& b) {
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.death < b.death;
  });
}

}  // namespace

CubicalFiltration build_filtration(const CubicalMask& mask) {
  mask.validate();
  if (mask.empty())
    throw std::runtime_error("filtration: empty mask has no offset filtration");

  DistanceField field = distance_transform(mask);
  CubicalFiltration filt;
  filt.dim = mask.dim;
  filt.resolution = mask.resolution;
  filt.values.resize(filt.cell_count());

  LatticeShape lat = filt.lattice();
  LatticeShape pixels = mask.lattice();
  int c[kMaxDim];
  int pc[kMaxDim];
  int lo[kMaxDim];
  int hi[kMaxDim];
  for (std::size_t i = 0; i < filt.values.size(); ++i) {
    lat.unflatten(i, c);
    // Incident pixels: an odd coordinate pins one pixel, an even coordinate
    // straddles up to two.
    for (int k = 0; k < filt.dim; ++k) {
      if (c[k] & 1) {
        lo[k] = hi[k] = (c[k] - 1) / 2;
      } else {
        lo[k] = std::max(c[k] / 2 - 1, 0);
        hi[k] = std::min(c[k] / 2, mask.resolution - 1);
      }
    }
    double best = 1e300;
    for (int k = 0; k < filt.dim; ++k) pc[k] = lo[k];
    while (true) {
      best = std::min(best, field.values[pixels.flatten(pc)]);
      int k = filt.dim - 1;
      while (k >= 0 && pc[k] == hi[k]) {
        pc[k] = lo[k];
        --k;
      }
      if (k < 0) break;
      ++pc[k];
    }
    filt.values[i] = best;
  }
  return filt;
}

namespace {

// Shared by the fast and brute-force reductions: cells ranked by
// (value, dimension, index). Faces never rank after their cofaces.
struct CellOrder {
  std::vector<std::uint32_t> order;  // rank -> cell
  std::vector<std::uint32_t> pos;    // cell -> rank
  std::vector<std::uint8_t> cell_dim;
};

CellOrder rank_cells(const CubicalFiltration& filt) {
  std::size_t n = filt.cell_count();
  CellOrder co;
  co.cell_dim.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    co.cell_dim[i] = static_cast<std::uint8_t>(filt.cell_dimension(i));
  co.order.resize(n);
  std::iota(co.order.begin(), co.order.end(), 0u);
  const auto& values = filt.values;
  const auto& dims = co.cell_dim;
  std::sort(co.order.begin(), co.order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (values[a] != values[b]) return values[a] < values[b];
    if (dims[a] != dims[b]) return dims[a] < dims[b];
    return a < b;
  });
  co.pos.resize(n);
  for (std::size_t r = 0; r < n; ++r) co.pos[co.order[r]] = static_cast<std::uint32_t>(r);
  return co;
}

// Ranks of the boundary faces of a cell, ascending.
void boundary_ranks(const CubicalFiltration& filt, const CellOrder& co, std::uint32_t cell,
                    std::vector<std::uint32_t>& out) {
  out.clear();
  LatticeShape lat = filt.lattice();
  int c[kMaxDim];
  lat.unflatten(cell, c);
  for (int k = 0; k < filt.dim; ++k) {
    if (!(c[k] & 1)) continue;
    c[k] -= 1;
    out.push_back(co.pos[lat.flatten(c)]);
    c[k] += 2;
    out.push_back(co.pos[lat.flatten(c)]);
    c[k] -= 1;
  }
  std::sort(out.begin(), out.end());
}

// Z/2 column addition: a ^= b, both sorted ascending.
void xor_into(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
              std::vector<std::uint32_t>& scratch) {
  scratch.clear();
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(scratch));
  a.swap(scratch);
}

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0u);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
};

}  // namespace

std::vector<PersistenceDiagram> persistence(const CubicalFiltration& filt, int max_degree) {
  require(max_degree >= 0 && max_degree <= filt.dim,
          "persistence: max degree must lie in [0, dim]");
  std::size_t n = filt.cell_count();
  CellOrder co = rank_cells(filt);

  std::vector<PersistenceDiagram> diagrams(static_cast<std::size_t>(max_degree) + 1);
  for (int s = 0; s <= max_degree; ++s) diagrams[s].degree = s;

  // Degree 0 by Kruskal over the vertex-edge graph: an edge merging two
  // components kills the younger one (later (birth, rank)).
  {
    UnionFind uf(n);
    std::vector<double> birth_value(n, 0.0);
    std::vector<std::uint32_t> birth_rank(n, 0);
    std::vector<std::uint32_t> faces;
    LatticeShape lat = filt.lattice();
    int c[kMaxDim];
    for (std::size_t r = 0; r < n; ++r) {
      std::uint32_t cell = co.order[r];
      int q = co.cell_dim[cell];
      if (q == 0) {
        birth_value[cell] = filt.values[cell];
        birth_rank[cell] = static_cast<std::uint32_t>(r);
      } else if (q == 1) {
        lat.unflatten(cell, c);
        std::uint32_t ends[2];
        int axis = -1;
        for (int k = 0; k < filt.dim; ++k)
          if (c[k] & 1) axis = k;
        c[axis] -= 1;
        ends[0] = static_cast<std::uint32_t>(lat.flatten(c));
        c[axis] += 2;
        ends[1] = static_cast<std::uint32_t>(lat.flatten(c));
        std::uint32_t ra = uf.find(ends[0]);
        std::uint32_t rb = uf.find(ends[1]);
        if (ra == rb) continue;
        // Older component (smaller birth, then earlier rank) survives.
        bool a_elder = birth_value[ra] != birth_value[rb]
                           ? birth_value[ra] < birth_value[rb]
                           : birth_rank[ra] < birth_rank[rb];
        std::uint32_t elder = a_elder ? ra : rb;
        std::uint32_t young = a_elder ? rb : ra;
        double death = filt.values[cell];
        if (death > birth_value[young])
          diagrams[0].points.push_back({birth_value[young], death});
        uf.parent[young] = elder;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (co.cell_dim[i] != 0) continue;
      std::uint32_t idx = static_cast<std::uint32_t>(i);
      if (uf.find(idx) == idx)
        diagrams[0].points.push_back({birth_value[idx], kInfiniteDeath});
    }
  }

  // Degrees >= 1 by boundary reduction with the twist: dimensions descend, a
  // paired birth cell is cleared and skipped in its own round.
  if (max_degree >= 1 && filt.dim >= 2) {
    std::vector<std::uint8_t> cleared(n, 0);
    std::vector<std::uint32_t> scratch;
    std::vector<std::uint32_t> col;
    for (int q = filt.dim; q >= 2; --q) {
      std::vector<std::int64_t> pivot_owner(n, -1);
      std::vector<std::vector<std::uint32_t>> stored;
      for (std::size_t r = 0; r < n; ++r) {
        std::uint32_t cell = co.order[r];
        if (co.cell_dim[cell] != q || cleared[cell]) continue;
        boundary_ranks(filt, co, cell, col);
        while (!col.empty()) {
          std::int64_t owner = pivot_owner[col.back()];
          if (owner < 0) break;
          xor_into(col, stored[static_cast<std::size_t>(owner)], scratch);
        }
        if (col.empty()) {
          // Unpaired cycle: a class of degree q alive through the cap.
          if (q <= max_degree)
            diagrams[q].points.push_back({filt.values[cell], kInfiniteDeath});
          continue;
        }
        std::uint32_t low = col.back();
        std::uint32_t low_cell = co.order[low];
        pivot_owner[low] = static_cast<std::int64_t>(stored.size());
        stored.push_back(col);
        cleared[low_cell] = 1;
        if (q - 1 <= max_degree && filt.values[cell] > filt.values[low_cell])
          diagrams[q - 1].points.push_back({filt.values[low_cell], filt.values[cell]});
      }
    }
  }

  for (auto& dgm : diagrams) sort_points(dgm);
  return diagrams;
}

std::vector<BettiEstimate> betti_estimate(const std::vector<PersistenceDiagram>& diagrams,
                                          double survival_offset) {
  require(survival_offset >= 0.0, "betti_estimate: survival offset must be nonnegative");
  std::vector<BettiEstimate> out;
  out.reserve(diagrams.size());
  for (const auto& dgm : diagrams) {
    BettiEstimate est;
    est.degree = dgm.degree;
    est.survival_offset = survival_offset;
    for (const auto& p : dgm.points)
      if (p.birth == 0.0 && p.death >= survival_offset) ++est.count;
    out.push_back(est);
  }
  return out;
}

}  // namespace jumptopo
