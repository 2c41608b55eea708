#pragma once

#include <vector>

#include "jumptopo/filtration.hpp"
#include "jumptopo/types.hpp"

namespace jumptopo {
// Independent reference implementations. Everything here is deliberately
// naive (quadratic scans, full reductions, exhaustive enumeration) and shares
// no code path with the production algorithms, so agreement is evidence, not
// tautology. Used by the oracle-check harness and the test suite; only
// sensible at small sizes.
namespace bruteforce {

// O(m^2d) all-pairs scan.
DistanceField distance_field(const CubicalMask& mask);

// Full boundary-matrix reduction in one pass over all cells, no clearing, no
// union-find shortcut.
std::vector<PersistenceDiagram> persistence(const CubicalFiltration& filt, int max_degree);

// Exhaustive min-over-matchings bottleneck; feasible for <= ~8 finite points
// per diagram.
double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b);

// Direct double loop over set-cell centers.
double hausdorff(const CubicalMask& a, const CubicalMask& b);

// Connected components of set cells, where cells sharing any vertex (full
// (3^d - 1)-neighborhood) are adjacent.
int component_count(const CubicalMask& mask);

}  // namespace bruteforce
}  // namespace jumptopo
