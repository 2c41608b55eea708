#pragma once

#include <cstdint>

#include "jumptopo/rng.hpp"
#include "jumptopo/types.hpp"

namespace jumptopo::testsupport {

inline CubicalMask random_mask(GaussianStream& rng, int dim, int resolution, double fill,
                               bool ensure_nonempty = true) {
  CubicalMask mask;
  mask.dim = dim;
  mask.resolution = resolution;
  mask.bits.resize(mask.cell_count());
  for (auto& b : mask.bits) b = rng.uniform() < fill ? 1 : 0;
  if (ensure_nonempty && mask.empty()) mask.bits[mask.bits.size() / 2] = 1;
  return mask;
}

inline PersistenceDiagram random_diagram(GaussianStream& rng, int degree, int max_points,
                                         int essentials = 0) {
  PersistenceDiagram dgm;
  dgm.degree = degree;
  int count = static_cast<int>(rng.uniform() * (max_points + 1));
  for (int i = 0; i < count; ++i) {
    double birth = rng.uniform();
    dgm.points.push_back({birth, birth + 0.05 + rng.uniform()});
  }
  for (int i = 0; i < essentials; ++i) dgm.points.push_back({rng.uniform(), kInfiniteDeath});
  return dgm;
}

}  // namespace jumptopo::testsupport
