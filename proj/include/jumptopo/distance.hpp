#pragma once

#include "jumptopo/shapes.hpp"
#include "jumptopo/types.hpp"

namespace jumptopo {

// Exact Euclidean distance transform (separable lower-envelope method).
// Distances are measured center to center; set cells get 0. For an empty mask
// every entry is the finite sentinel sqrt(d) + 1.
DistanceField distance_transform(const CubicalMask& mask);

// Cells whose center lies within beta of the mask (center-to-center, so
// offset(mask, 0) == mask). beta must be >= 0.
CubicalMask offset(const CubicalMask& mask, double beta);

// Hausdorff distance between the center point sets of two nonempty masks.
// Differing resolutions are allowed only when one divides the other; the
// coarser mask is refined by exact cell subdivision first. Either mask being
// empty is an error: the empty set has no meaningful Hausdorff distance.
double hausdorff(const CubicalMask& a, const CubicalMask& b);

// Hausdorff distance between a mask and the exact jump set of a shape.
// mask_to_truth is exact per set cell center; truth_to_mask is measured from
// a 4x-resolution rasterization of the jump set, so the reported value
// carries a discretization slack of at most sqrt(d)/(4m).
struct TruthDistanceReport {
  double hausdorff_distance = 0.0;
  double mask_to_truth = 0.0;
  double truth_to_mask = 0.0;
  double slack = 0.0;  // +- bound on the truth_to_mask discretization error
};
TruthDistanceReport hausdorff_to_truth(const CubicalMask& mask, const ShapeSpec& spec);

}  // namespace jumptopo
