#pragma once

#include <vector>

#include "jumptopo/types.hpp"

namespace jumptopo {

// Bottleneck distance between two diagrams of the same degree under the
// L-infinity ground metric, with diagonal matching allowed for finite points.
// Essential classes (death = +inf) must match essential classes: if the two
// diagrams carry different essential counts the distance is +inf; otherwise
// essentials are paired by sorted birth. The finite part is solved exactly by
// a binary search over the candidate cost set with a bipartite matching
// feasibility test, so the result is an exact candidate value, not an
// approximation.
double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b);

// Empirical check of the offset-interleaving stability bound: for masks A and
// B at Hausdorff distance eps, every degree's bottleneck distance should be
// at most eps plus one cell diagonal of discretization slack.
struct StabilityReport {
  double hausdorff_distance = 0.0;
  double cell_diagonal = 0.0;
  std::vector<double> bottleneck_per_degree;
  std::vector<double> margin;  // bound minus observed, per degree
  bool within_bound = false;
};
StabilityReport stability_check(const CubicalMask& a, const CubicalMask& b, int max_degree);

}  // namespace jumptopo
