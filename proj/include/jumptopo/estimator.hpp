#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jumptopo/calibration.hpp"
#include "jumptopo/shapes.hpp"
#include "jumptopo/types.hpp"

namespace jumptopo {

// Per-cell sample means on an m^d grid, m = round(1/h). Construction fails if
// any cell captures no sample, so `means` is total.
struct HistogramField {
  int dim = 0;
  int cells_per_axis = 0;
  std::vector<double> means;
  std::vector<std::int64_t> counts;

  LatticeShape lattice() const { return {dim, cells_per_axis}; }
  double cell_size() const { return 1.0 / cells_per_axis; }
};

// Bin the observations at cell width h (h in (0, 1]). Cell assignment is done
// in exact integer arithmetic on the midpoint lattice; a sample landing on an
// interior cell boundary goes to the lower cell.
HistogramField build_histogram(const ObservationGrid& obs, double cell_width);

// Largest minus smallest cell mean over all cells whose closed box lies
// within Euclidean distance `radius` of the given cell's closed box. The cell
// itself always qualifies, so the result is >= 0.
double local_range(const HistogramField& field, std::size_t cell, double radius);

// local_range evaluated at every cell.
std::vector<double> local_range_field(const HistogramField& field, double radius);

// Threshold the local range at jump_floor / 2 (inclusive). The mask lives on
// the histogram grid.
CubicalMask estimate_jumpset(const HistogramField& field, double radius,
                             double jump_floor);

struct PipelineOptions {
  double jump_floor = 0.0;
  std::optional<double> sigma;  // empty: unknown-noise calibration branch
  std::optional<double> mu;     // empty: unknown-regularity branch
  std::optional<double> cell_width_override;
  std::optional<double> radius_override;
  SnRule sn = SnRule::log_n();
};

struct EstimateResult {
  CubicalMask mask;
  CalibrationParams params;
  HistogramField field;
  std::vector<std::string> notes;
};

// Calibrate (or take overrides), bin, and threshold in one step.
EstimateResult estimate_pipeline(const ObservationGrid& obs, const PipelineOptions& opt);

// Diagnostic for noiseless runs: the largest |cell mean - signal(center)|
// over cells whose closed box avoids the jump set. Zero for piecewise
// constant signals; bounded by the Lipschitz slope times the cell diagonal
// otherwise.
double histogram_sup_error_off_jump(const HistogramField& field, const ShapeSpec& spec);

}  // namespace jumptopo
