#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jumptopo/calibration.hpp"
#include "jumptopo/shapes.hpp"

#include <json.hpp>

namespace jumptopo {

// One experiment: a shape, one or more grid sizes, noise level, trial count,
// and which checks to run per trial. Loaded from JSON; every field has a
// stable key so configs are diffable.
struct ExperimentConfig {
  std::string shape = "two_circles";
  nlohmann::json shape_params = nlohmann::json::object();
  std::vector<int> grid_sides = {64, 128, 256, 512};
  double sigma = 0.25;
  double jump_floor = 4.0;
  bool sigma_known = true;
  bool mu_known = true;
  int trials = 10;
  std::uint64_t base_seed = 1789;
  std::string output_dir = ".";

  std::optional<double> cell_width_override;
  std::optional<double> radius_override;
  std::optional<double> survival_offset_override;

  bool check_hausdorff = true;
  bool check_sandwich = true;
  bool check_betti = false;
  bool check_bottleneck = false;

  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

// Outcome of a single trial. Failures (for instance an empty estimated mask)
// are first-class records, never aborts.
struct TrialRecord {
  int side = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  double cell_width = 0.0;
  double radius = 0.0;
  double survival_offset = 0.0;
  int resolution = 0;          // histogram / mask cells per axis
  double cell_diagonal = 0.0;  // sqrt(d) / resolution
  double hausdorff_error = 0.0;
  double truth_to_mask = 0.0;
  double mask_to_truth = 0.0;
  bool sandwich_ok = false;
  bool betti_ok = false;
  std::vector<int> betti;
  std::vector<double> bottleneck_per_degree;
  bool bottleneck_ok = false;
  bool failed = false;
  std::string failure_reason;
  double wall_seconds = 0.0;
};

struct RateSweepResult {
  std::vector<TrialRecord> records;
  // Least-squares slope of log(mean Hausdorff error) against
  // log(log(n^2)/n); needs at least two grid sizes with surviving trials,
  // otherwise NaN.
  double slope = 0.0;
  double intercept = 0.0;
  int fit_levels = 0;
  int failures = 0;
  std::string csv_path;
};

// Run trials over every grid size, record Hausdorff errors, fit the rate, and
// write one CSV (schema column included) plus a JSON summary to the output
// directory. Identical config + base seed gives byte-identical outputs; trial
// seeds are base_seed XOR the global trial index.
RateSweepResult run_rate_sweep(const ExperimentConfig& config);

struct ConsistencyLevel {
  int side = 0;
  int trials = 0;
  int failures = 0;
  double sandwich_frequency = 0.0;
  double betti_match_frequency = 0.0;
  double bottleneck_within_bound_frequency = 0.0;
  std::vector<int> betti_expected;
};

struct ConsistencyReport {
  std::vector<ConsistencyLevel> levels;
  std::vector<TrialRecord> records;
  std::string json_path;
  nlohmann::json to_json(const ExperimentConfig& config) const;
};

// Per-trial topology checks: sandwich containment, survival-count Betti match
// against the shape's declared Betti numbers, and bottleneck distance to the
// same-resolution rasterization of the true jump set within the stability
// bound 2r + 2 * cell diagonal.
ConsistencyReport run_topology_consistency(const ExperimentConfig& config);

// Cross-checks of every production algorithm against its brute-force
// counterpart on randomized small inputs.
struct OracleSuiteReport {
  struct Entry {
    std::string name;
    bool pass = false;
    std::string detail;
  };
  std::vector<Entry> entries;
  bool all_pass() const {
    for (const auto& e : entries)
      if (!e.pass) return false;
    return true;
  }
};
OracleSuiteReport run_oracle_suite(std::uint64_t seed);

// Checks shared by the consistency harness and the acceptance suite.
bool sandwich_lower_ok(const TrialRecord& rec, double cell_diag);
bool sandwich_upper_ok(const TrialRecord& rec, double cell_diag);

std::string trial_csv_header();
std::string trial_csv_row(const TrialRecord& rec, const std::string& shape);

}  // namespace jumptopo
