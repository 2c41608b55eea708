#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jumptopo {

// Dimensions handled by the library. Everything is written for generic d,
// but index buffers are stack-allocated against this bound.
inline constexpr int kMaxDim = 4;

inline void require(bool condition, const std::string& message) {
  if (!condition) throw std::invalid_argument(message);
}

// Row-major index math for a cubic lattice with `side` sites per axis.
// The last axis varies fastest.
struct LatticeShape {
  int dim = 0;
  int side = 0;

  std::size_t size() const {
    std::size_t s = 1;
    for (int k = 0; k < dim; ++k) s *= static_cast<std::size_t>(side);
    return s;
  }

  std::size_t flatten(const int* coords) const {
    std::size_t idx = 0;
    for (int k = 0; k < dim; ++k)
      idx = idx * static_cast<std::size_t>(side) + static_cast<std::size_t>(coords[k]);
    return idx;
  }

  void unflatten(std::size_t idx, int* coords) const {
    for (int k = dim - 1; k >= 0; --k) {
      coords[k] = static_cast<int>(idx % static_cast<std::size_t>(side));
      idx /= static_cast<std::size_t>(side);
    }
  }

  bool contains(const int* coords) const {
    for (int k = 0; k < dim; ++k)
      if (coords[k] < 0 || coords[k] >= side) return false;
    return true;
  }
};

}  // namespace jumptopo
