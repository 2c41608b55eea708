#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "jumptopo/lattice.hpp"

namespace jumptopo {

// Noisy samples of a function on the regular midpoint lattice of [0,1]^d:
// site i along an axis sits at (i + 0.5) / side. Values are stored row-major
// with the last axis fastest.
struct ObservationGrid {
  int dim = 0;
  int side = 0;              // sites per axis
  double noise_sigma = 0.0;  // standard deviation used when sampling
  bool sigma_known = true;
  std::uint64_t seed = 0;
  std::vector<double> values;

  LatticeShape lattice() const { return {dim, side}; }
  std::size_t sample_count() const { return lattice().size(); }

  void site_coords(std::size_t idx, double* x) const {
    int c[kMaxDim];
    lattice().unflatten(idx, c);
    for (int k = 0; k < dim; ++k) x[k] = (c[k] + 0.5) / side;
  }

  void validate() const {
    require(dim >= 1 && dim <= kMaxDim, "observation grid: dim out of range");
    require(side >= 1, "observation grid: side must be positive");
    require(values.size() == sample_count(), "observation grid: value count mismatch");
    require(noise_sigma >= 0.0, "observation grid: negative sigma");
  }
};

// Axis-aligned cubical subset of [0,1]^d on an m^d cell grid. The represented
// set is the closed union of cells whose bit is set; the empty mask is legal.
struct CubicalMask {
  int dim = 0;
  int resolution = 0;  // cells per axis
  std::vector<std::uint8_t> bits;

  LatticeShape lattice() const { return {dim, resolution}; }
  std::size_t cell_count() const { return lattice().size(); }
  double cell_size() const { return 1.0 / resolution; }
  double cell_diagonal() const { return std::sqrt(static_cast<double>(dim)) / resolution; }

  std::size_t set_count() const {
    std::size_t n = 0;
    for (auto b : bits) n += (b != 0);
    return n;
  }
  bool empty() const { return set_count() == 0; }

  void cell_center(std::size_t idx, double* x) const {
    int c[kMaxDim];
    lattice().unflatten(idx, c);
    for (int k = 0; k < dim; ++k) x[k] = (c[k] + 0.5) / resolution;
  }

  void validate() const {
    require(dim >= 1 && dim <= kMaxDim, "mask: dim out of range");
    require(resolution >= 1, "mask: resolution must be positive");
    require(bits.size() == cell_count(), "mask: bit count mismatch");
  }
};

// Per-cell Euclidean distance (center to nearest set-cell center) to a mask.
// For an empty mask every entry holds the finite sentinel sqrt(d) + 1, which
// exceeds any distance realizable inside [0,1]^d.
struct DistanceField {
  int dim = 0;
  int resolution = 0;
  std::vector<double> values;

  LatticeShape lattice() const { return {dim, resolution}; }
  double cell_size() const { return 1.0 / resolution; }
  double empty_sentinel() const { return std::sqrt(static_cast<double>(dim)) + 1.0; }
};

inline constexpr double kInfiniteDeath = std::numeric_limits<double>::infinity();

struct DiagramPoint {
  double birth = 0.0;
  double death = 0.0;  // kInfiniteDeath for classes alive at the filtration cap
};

struct PersistenceDiagram {
  int degree = 0;
  std::vector<DiagramPoint> points;

  std::size_t essential_count() const {
    std::size_t n = 0;
    for (const auto& p : points) n += std::isinf(p.death);
    return n;
  }
};

struct BettiEstimate {
  int degree = 0;
  int count = 0;
  double survival_offset = 0.0;  // features must persist to at least this value
};

}  // namespace jumptopo
