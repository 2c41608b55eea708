#pragma once

#include <vector>

#include "jumptopo/types.hpp"

namespace jumptopo {

// Filtered cubical complex on the (2m+1)^d coordinate lattice: a lattice
// point is a cell of dimension equal to its number of odd coordinates (all
// odd: a top cell mirroring a pixel; all even: a vertex). Top cells carry the
// mask's distance-field value; every lower cell carries the minimum over the
// top cells it bounds. Sublevel sets of this function are exactly the offsets
// of the mask, closed under faces.
struct CubicalFiltration {
  int dim = 0;
  int resolution = 0;  // pixels per axis (m); lattice side is 2m+1
  std::vector<double> values;

  LatticeShape lattice() const { return {dim, 2 * resolution + 1}; }
  std::size_t cell_count() const { return lattice().size(); }
  double cell_size() const { return 1.0 / resolution; }

  int cell_dimension(std::size_t idx) const {
    int c[kMaxDim];
    lattice().unflatten(idx, c);
    int q = 0;
    for (int k = 0; k < dim; ++k) q += (c[k] & 1);
    return q;
  }
};

// Build the filtration from a nonempty mask (empty masks have no offset
// filtration to speak of and are rejected).
CubicalFiltration build_filtration(const CubicalMask& mask);

// Sublevel-set persistence in degrees 0..max_degree (max_degree <= dim;
// degree dim is always empty for these filtrations and is returned empty).
// Degree 0 uses union-find over the vertex-edge graph; higher degrees use
// boundary-matrix reduction over Z/2 with the twist optimization (columns
// processed in decreasing cell dimension, paired births cleared). Classes
// alive at the terminal offset get death = +inf. Zero-persistence pairs are
// dropped.
std::vector<PersistenceDiagram> persistence(const CubicalFiltration& filt, int max_degree);

// Number of features per degree born at offset 0 that survive to the given
// offset (death >= survival_offset, ties count). This equals the rank of the
// map induced by the inclusion of the mask into its survival_offset-offset.
std::vector<BettiEstimate> betti_estimate(const std::vector<PersistenceDiagram>& diagrams,
                                          double survival_offset);

}  // namespace jumptopo
