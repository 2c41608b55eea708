#pragma once

#include <string>
#include <vector>

#include "jumptopo/shapes.hpp"
#include "jumptopo/types.hpp"

#include <json.hpp>

namespace jumptopo {

// Observation grid files: a single-line JSON header {"d","N","sigma","seed"}
// terminated by '\n', followed by the samples as little-endian float64 in
// row-major order. Paths ending in .csv use a text payload instead (same
// header line, then one comma-separated row per slice line); CSV is only
// allowed for N <= 64.
void write_observation_grid(const ObservationGrid& obs, const std::string& path);
ObservationGrid read_observation_grid(const std::string& path);

// Mask files: single-line JSON header {"schema","d","m"} + '\n', then the
// bits packed 8 per byte in row-major order, last axis fastest, LSB first.
void write_mask(const CubicalMask& mask, const std::string& path);
CubicalMask read_mask(const std::string& path);

// Ground-truth sidecar for a generated grid: shape name and parameters
// (enough to rebuild the ShapeSpec), jump floor, regularity metadata, Betti
// numbers, and the analytic diagram when one exists.
void write_shape_sidecar(const ShapeSpec& spec, const std::string& path);
ShapeSpec read_shape_sidecar(const std::string& path);

// Diagrams as CSV: header "degree,birth,death", one row per point, deaths of
// essential classes written as "inf". Doubles are round-trip formatted.
void write_diagrams_csv(const std::vector<PersistenceDiagram>& diagrams,
                        const std::string& path);
std::vector<PersistenceDiagram> read_diagrams_csv(const std::string& path);

nlohmann::json diagrams_to_json(const std::vector<PersistenceDiagram>& diagrams);
std::vector<PersistenceDiagram> diagrams_from_json(const nlohmann::json& j);

// Round-trip double formatting (%.17g equivalent) used by all text outputs.
std::string format_double(double v);

}  // namespace jumptopo
