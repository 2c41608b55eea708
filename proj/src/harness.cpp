#include "jumptopo/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "jumptopo/bottleneck.hpp"
#include "jumptopo/bruteforce.hpp"
#include "jumptopo/distance.hpp"
#include "jumptopo/estimator.hpp"
#include "jumptopo/filtration.hpp"
#include "jumptopo/io.hpp"
#include "jumptopo/rng.hpp"

namespace jumptopo {

using nlohmann::json;

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig cfg;
  cfg.shape = j.value("shape", cfg.shape);
  if (j.contains("shape_params")) cfg.shape_params = j.at("shape_params");
  if (j.contains("grid_sides")) cfg.grid_sides = j.at("grid_sides").get<std::vector<int>>();
  cfg.sigma = j.value("sigma", cfg.sigma);
  cfg.jump_floor = j.value("jump_floor", cfg.jump_floor);
  cfg.sigma_known = j.value("sigma_known", cfg.sigma_known);
  cfg.mu_known = j.value("mu_known", cfg.mu_known);
  cfg.trials = j.value("trials", cfg.trials);
  cfg.base_seed = j.value("base_seed", cfg.base_seed);
  cfg.output_dir = j.value("output_dir", cfg.output_dir);
  if (j.contains("overrides")) {
    const json& o = j.at("overrides");
    if (o.contains("cell_width") && !o.at("cell_width").is_null())
      cfg.cell_width_override = o.at("cell_width").get<double>();
    if (o.contains("radius") && !o.at("radius").is_null())
      cfg.radius_override = o.at("radius").get<double>();
    if (o.contains("survival_offset") && !o.at("survival_offset").is_null())
      cfg.survival_offset_override = o.at("survival_offset").get<double>();
  }
  if (j.contains("checks")) {
    const json& c = j.at("checks");
    cfg.check_hausdorff = c.value("hausdorff", cfg.check_hausdorff);
    cfg.check_sandwich = c.value("sandwich", cfg.check_sandwich);
    cfg.check_betti = c.value("betti", cfg.check_betti);
    cfg.check_bottleneck = c.value("bottleneck", cfg.check_bottleneck);
  }
  return cfg;
}

json ExperimentConfig::to_json() const {
  json o;
  o["cell_width"] = cell_width_override.has_value() ? json(*cell_width_override) : json(nullptr);
  o["radius"] = radius_override.has_value() ? json(*radius_override) : json(nullptr);
  o["survival_offset"] =
      survival_offset_override.has_value() ? json(*survival_offset_override) : json(nullptr);
  return json{{"shape", shape},
              {"shape_params", shape_params},
              {"grid_sides", grid_sides},
              {"sigma", sigma},
              {"jump_floor", jump_floor},
              {"sigma_known", sigma_known},
              {"mu_known", mu_known},
              {"trials", trials},
              {"base_seed", base_seed},
              {"output_dir", output_dir},
              {"overrides", o},
              {"checks",
               {{"hausdorff", check_hausdorff},
                {"sandwich", check_sandwich},
                {"betti", check_betti},
                {"bottleneck", check_bottleneck}}}};
}

bool sandwich_lower_ok(const TrialRecord& rec, double cell_diag) {
  return rec.truth_to_mask <= cell_diag;
}

bool sandwich_upper_ok(const TrialRecord& rec, double cell_diag) {
  return rec.mask_to_truth <= 2.0 * rec.radius + cell_diag;
}

namespace {

ShapeSpec shape_from_config(const ExperimentConfig& cfg) {
  json params = cfg.shape_params;
  if (!params.contains("jump_floor")) params["jump_floor"] = cfg.jump_floor;
  return make_shape(cfg.shape, params);
}

// One seeded trial: sample, estimate, measure. Topology work only when any
// topological check is enabled. Failures are recorded, never thrown.
TrialRecord run_trial(const ExperimentConfig& cfg, const ShapeSpec& spec, int side, int trial,
                      std::uint64_t seed) {
  TrialRecord rec;
  rec.side = side;
  rec.trial = trial;
  rec.seed = seed;
  auto t0 = std::chrono::steady_clock::now();
  try {
    ObservationGrid obs = sample_to_grid(spec, side, cfg.sigma, seed);

    PipelineOptions opt;
    opt.jump_floor = cfg.jump_floor;
    if (cfg.sigma_known) opt.sigma = cfg.sigma;
    if (cfg.mu_known) opt.mu = spec.mu;
    opt.cell_width_override = cfg.cell_width_override;
    opt.radius_override = cfg.radius_override;
    EstimateResult est = estimate_pipeline(obs, opt);

    rec.cell_width = est.params.cell_width;
    rec.radius = est.params.radius;
    rec.survival_offset = cfg.survival_offset_override.value_or(est.params.survival_offset);
    rec.resolution = est.mask.resolution;
    rec.cell_diagonal = est.mask.cell_diagonal();

    TruthDistanceReport dist = hausdorff_to_truth(est.mask, spec);
    rec.hausdorff_error = dist.hausdorff_distance;
    rec.truth_to_mask = dist.truth_to_mask;
    rec.mask_to_truth = dist.mask_to_truth;
    rec.sandwich_ok =
        sandwich_lower_ok(rec, rec.cell_diagonal) && sandwich_upper_ok(rec, rec.cell_diagonal);

    if (cfg.check_betti || cfg.check_bottleneck) {
      int max_degree = spec.dim - 1;
      auto diagrams = persistence(build_filtration(est.mask), max_degree);

      if (cfg.check_betti) {
        auto counts = betti_estimate(diagrams, rec.survival_offset);
        rec.betti.clear();
        for (const auto& c : counts) rec.betti.push_back(c.count);
        rec.betti_ok = true;
        for (int s = 0; s < spec.dim; ++s)
          if (rec.betti[s] != spec.betti[s]) rec.betti_ok = false;
      }
      if (cfg.check_bottleneck) {
        if (spec.has_analytic_diagram) {
          double bound = 2.0 * rec.radius + 2.0 * rec.cell_diagonal;
          rec.bottleneck_ok = true;
          for (int s = 0; s <= max_degree; ++s) {
            double d = bottleneck(diagrams[s], spec.analytic_diagram[s]);
            rec.bottleneck_per_degree.push_back(d);
            if (!(d <= bound)) rec.bottleneck_ok = false;
          }
        } else {
          rec.bottleneck_ok = false;  // no reference diagram; reported as skipped
        }
      }
    }
  } catch (const std::exception& e) {
    rec.failed = true;
    rec.failure_reason = e.what();
  }
  rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

std::string sanitize_csv(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return s;
}

constexpr int kCsvDegrees = 3;

}  // namespace

std::string trial_csv_header() {
  std::string h =
      "schema,shape,side,trial,seed,cell_width,radius,survival_offset,resolution,"
      "hausdorff,truth_to_mask,mask_to_truth,sandwich,betti_ok,bottleneck_ok,failed,"
      "failure_reason";
  for (int s = 0; s < kCsvDegrees; ++s) h += ",betti" + std::to_string(s);
  for (int s = 0; s < kCsvDegrees; ++s) h += ",bottleneck" + std::to_string(s);
  return h;
}

std::string trial_csv_row(const TrialRecord& rec, const std::string& shape) {
  // Timing stays out of the row so identical runs are byte-identical.
  std::ostringstream out;
  out << "jumptopo.trials.v1" << ',' << sanitize_csv(shape) << ',' << rec.side << ','
      << rec.trial << ',' << rec.seed << ','
      << format_double(rec.cell_width) << ',' << format_double(rec.radius) << ','
      << format_double(rec.survival_offset) << ',' << rec.resolution << ','
      << format_double(rec.hausdorff_error) << ',' << format_double(rec.truth_to_mask) << ','
      << format_double(rec.mask_to_truth) << ',' << (rec.sandwich_ok ? 1 : 0) << ','
      << (rec.betti_ok ? 1 : 0) << ',' << (rec.bottleneck_ok ? 1 : 0) << ','
      << (rec.failed ? 1 : 0) << ',' << sanitize_csv(rec.failure_reason);
  for (int s = 0; s < kCsvDegrees; ++s) {
    out << ',';
    if (s < static_cast<int>(rec.betti.size())) out << rec.betti[s];
  }
  for (int s = 0; s < kCsvDegrees; ++s) {
    out << ',';
    if (s < static_cast<int>(rec.bottleneck_per_degree.size()))
      out << format_double(rec.bottleneck_per_degree[s]);
  }
  return out.str();
}

namespace {

void write_trials_csv(const std::vector<TrialRecord>& records, const std::string& shape,
                      const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << trial_csv_header() << '\n';
  for (const auto& rec : records) out << trial_csv_row(rec, shape) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

// The output directory is environment, not experiment identity: scrubbing it
// from the embedded config keeps identical runs byte-identical no matter
// where their files land.
json config_fingerprint(const ExperimentConfig& cfg) {
  json j = cfg.to_json();
  j.erase("output_dir");
  return j;
}

}  // namespace

RateSweepResult run_rate_sweep(const ExperimentConfig& cfg) {
  require(!cfg.grid_sides.empty(), "rate sweep: no grid sizes");
  require(cfg.trials >= 1, "rate sweep: need at least one trial");
  ShapeSpec spec = shape_from_config(cfg);
  std::filesystem::create_directories(cfg.output_dir);

  RateSweepResult result;
  int global = 0;
  for (int side : cfg.grid_sides) {
    for (int t = 0; t < cfg.trials; ++t, ++global) {
      std::uint64_t seed = cfg.base_seed ^ static_cast<std::uint64_t>(global);
      TrialRecord rec = run_trial(cfg, spec, side, t, seed);
      if (rec.failed) ++result.failures;
      result.records.push_back(std::move(rec));
    }
  }

  // Level means and the least-squares rate fit in log-log coordinates.
  json levels = json::array();
  std::vector<double> xs, ys;
  for (int side : cfg.grid_sides) {
    double sum = 0.0;
    int count = 0;
    double radius = 0.0;
    for (const auto& rec : result.records) {
      if (rec.side != side || rec.failed) continue;
      sum += rec.hausdorff_error;
      radius = rec.radius;
      ++count;
    }
    double n = std::pow(static_cast<double>(side), spec.dim);
    json level{{"side", side}, {"n", n}, {"surviving_trials", count}};
    if (count > 0 && sum > 0.0) {
      double mean = sum / count;
      double x = std::log(std::log(n * n) / n);
      double y = std::log(mean);
      xs.push_back(x);
      ys.push_back(y);
      level["mean_hausdorff"] = mean;
      level["x_log_rate"] = x;
      level["y_log_mean"] = y;
      level["radius"] = radius;
      level["empirical_constant"] = radius > 0 ? mean / radius : 0.0;
    }
    levels.push_back(level);
  }
  result.fit_levels = static_cast<int>(xs.size());
  if (xs.size() >= 2) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
    }
    result.slope = sxy / sxx;
    result.intercept = my - result.slope * mx;
  } else {
    result.slope = std::numeric_limits<double>::quiet_NaN();
    result.intercept = std::numeric_limits<double>::quiet_NaN();
  }

  result.csv_path = (std::filesystem::path(cfg.output_dir) / "rate_sweep.csv").string();
  write_trials_csv(result.records, cfg.shape, result.csv_path);

  json summary{{"schema", "jumptopo.rate_sweep.v1"},
               {"config", config_fingerprint(cfg)},
               {"levels", levels},
               {"fit_levels", result.fit_levels},
               {"failures", result.failures}};
  summary["slope"] = std::isnan(result.slope) ? json(nullptr) : json(result.slope);
  summary["intercept"] = std::isnan(result.intercept) ? json(nullptr) : json(result.intercept);
  std::ofstream out(std::filesystem::path(cfg.output_dir) / "rate_sweep_summary.json",
                    std::ios::binary);
  out << summary.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: rate_sweep_summary.json");
  return result;
}

json ConsistencyReport::to_json(const ExperimentConfig& config) const {
  json out{{"schema", "jumptopo.consistency.v1"}, {"config", config_fingerprint(config)}};
  ShapeSpec spec = shape_from_config(config);
  out["bottleneck_reference"] =
      spec.has_analytic_diagram ? json("analytic") : json(nullptr);
  if (!spec.has_analytic_diagram)
    out["notes"] = json::array({"shape has no closed-form diagram; bottleneck check skipped"});
  json lv = json::array();
  for (const auto& level : levels) {
    json l{{"side", level.side},
           {"trials", level.trials},
           {"failures", level.failures},
           {"sandwich_frequency", level.sandwich_frequency},
           {"betti_match_frequency", level.betti_match_frequency},
           {"betti_expected", level.betti_expected}};
    l["bottleneck_within_bound_frequency"] = spec.has_analytic_diagram
                                                 ? json(level.bottleneck_within_bound_frequency)
                                                 : json(nullptr);
    lv.push_back(l);
  }
  out["levels"] = lv;
  return out;
}

ConsistencyReport run_topology_consistency(const ExperimentConfig& config) {
  ExperimentConfig cfg = config;
  cfg.check_betti = true;
  cfg.check_bottleneck = true;
  require(!cfg.grid_sides.empty(), "consistency: no grid sizes");
  require(cfg.trials >= 1, "consistency: need at least one trial");
  ShapeSpec spec = shape_from_config(cfg);
  std::filesystem::create_directories(cfg.output_dir);

  ConsistencyReport report;
  int global = 0;
  for (int side : cfg.grid_sides) {
    ConsistencyLevel level;
    level.side = side;
    level.trials = cfg.trials;
    level.betti_expected = spec.betti;
    int sandwich = 0, betti = 0, bottleneck_ok = 0;
    for (int t = 0; t < cfg.trials; ++t, ++global) {
      std::uint64_t seed = cfg.base_seed ^ static_cast<std::uint64_t>(global);
      TrialRecord rec = run_trial(cfg, spec, side, t, seed);
      if (rec.failed) ++level.failures;
      sandwich += rec.sandwich_ok;
      betti += rec.betti_ok;
      bottleneck_ok += rec.bottleneck_ok;
      report.records.push_back(std::move(rec));
    }
    level.sandwich_frequency = static_cast<double>(sandwich) / cfg.trials;
    level.betti_match_frequency = static_cast<double>(betti) / cfg.trials;
    level.bottleneck_within_bound_frequency = static_cast<double>(bottleneck_ok) / cfg.trials;
    report.levels.push_back(std::move(level));
  }

  write_trials_csv(report.records, cfg.shape,
                   (std::filesystem::path(cfg.output_dir) / "consistency_trials.csv").string());
  report.json_path = (std::filesystem::path(cfg.output_dir) / "consistency.json").string();
  std::ofstream out(report.json_path, std::ios::binary);
  out << report.to_json(cfg).dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: consistency.json");
  return report;
}

namespace {

CubicalMask random_mask(GaussianStream& rng, int dim, int resolution, double fill) {
  CubicalMask mask;
  mask.dim = dim;
  mask.resolution = resolution;
  mask.bits.resize(mask.cell_count());
  for (auto& b : mask.bits) b = rng.uniform() < fill ? 1 : 0;
  return mask;
}

PersistenceDiagram random_diagram(GaussianStream& rng, int degree, int max_points) {
  PersistenceDiagram dgm;
  dgm.degree = degree;
  int count = static_cast<int>(rng.uniform() * (max_points + 1));
  for (int i = 0; i < count; ++i) {
    double birth = rng.uniform();
    double death = birth + rng.uniform();
    if (rng.uniform() < 0.15) death = kInfiniteDeath;
    dgm.points.push_back({birth, death});
  }
  return dgm;
}

bool diagrams_equal(const std::vector<PersistenceDiagram>& a,
                    const std::vector<PersistenceDiagram>& b, std::string& why) {
  if (a.size() != b.size()) {
    why = "degree count mismatch";
    return false;
  }
  for (std::size_t s = 0; s < a.size(); ++s) {
    if (a[s].points.size() != b[s].points.size()) {
      why = "point count mismatch in degree " + std::to_string(s);
      return false;
    }
    for (std::size_t i = 0; i < a[s].points.size(); ++i) {
      const auto& p = a[s].points[i];
      const auto& q = b[s].points[i];
      bool same = p.birth == q.birth &&
                  (p.death == q.death || (std::isinf(p.death) && std::isinf(q.death)));
      if (!same) {
        why = "point mismatch in degree " + std::to_string(s);
        return false;
      }
    }
  }
  return true;
}

}  // namespace

OracleSuiteReport run_oracle_suite(std::uint64_t seed) {
  OracleSuiteReport report;
  GaussianStream rng(seed);

  {
    OracleSuiteReport::Entry e{"distance_transform_vs_scan", true, ""};
    for (int i = 0; i < 200 && e.pass; ++i) {
      int dim = i % 2 == 0 ? 2 : 3;
      int m = dim == 2 ? 4 + static_cast<int>(rng.uniform() * 13)
                       : 3 + static_cast<int>(rng.uniform() * 6);
      CubicalMask mask = random_mask(rng, dim, m, 0.15);
      DistanceField fast = distance_transform(mask);
      DistanceField slow = bruteforce::distance_field(mask);
      for (std::size_t c = 0; c < fast.values.size(); ++c) {
        if (std::abs(fast.values[c] - slow.values[c]) > 1e-9) {
          e.pass = false;
          e.detail = "mismatch on mask " + std::to_string(i);
          break;
        }
      }
    }
    report.entries.push_back(e);
  }

  {
    OracleSuiteReport::Entry e{"persistence_vs_naive_reduction", true, ""};
    for (int i = 0; i < 100 && e.pass; ++i) {
      int dim = i % 2 == 0 ? 2 : 3;
      int m = dim == 2 ? 2 + static_cast<int>(rng.uniform() * 7)
                       : 2 + static_cast<int>(rng.uniform() * 4);
      CubicalMask mask = random_mask(rng, dim, m, 0.35);
      if (mask.empty()) mask.bits[0] = 1;
      CubicalFiltration filt = build_filtration(mask);
      auto fast = persistence(filt, dim);
      auto slow = bruteforce::persistence(filt, dim);
      std::string why;
      if (!diagrams_equal(fast, slow, why)) {
        e.pass = false;
        e.detail = "mask " + std::to_string(i) + ": " + why;
      }
    }
    report.entries.push_back(e);
  }

  {
    OracleSuiteReport::Entry e{"bottleneck_vs_exhaustive", true, ""};
    for (int i = 0; i < 100 && e.pass; ++i) {
      PersistenceDiagram a = random_diagram(rng, 0, 6);
      PersistenceDiagram b = random_diagram(rng, 0, 6);
      double fast = bottleneck(a, b);
      double slow = bruteforce::bottleneck(a, b);
      bool same = fast == slow || (std::isinf(fast) && std::isinf(slow));
      if (!same) {
        e.pass = false;
        e.detail = "pair " + std::to_string(i) + ": " + format_double(fast) + " vs " +
                   format_double(slow);
      }
    }
    report.entries.push_back(e);
  }

  {
    OracleSuiteReport::Entry e{"hausdorff_vs_point_scan", true, ""};
    for (int i = 0; i < 100 && e.pass; ++i) {
      int dim = i % 2 == 0 ? 2 : 3;
      int m = dim == 2 ? 4 + static_cast<int>(rng.uniform() * 9)
                       : 3 + static_cast<int>(rng.uniform() * 4);
      CubicalMask a = random_mask(rng, dim, m, 0.2);
      CubicalMask b = random_mask(rng, dim, m, 0.2);
      if (a.empty()) a.bits[0] = 1;
      if (b.empty()) b.bits[b.bits.size() - 1] = 1;
      double fast = hausdorff(a, b);
      double slow = bruteforce::hausdorff(a, b);
      if (std::abs(fast - slow) > 1e-9) {
        e.pass = false;
        e.detail = "pair " + std::to_string(i);
      }
    }
    report.entries.push_back(e);
  }

  {
    OracleSuiteReport::Entry e{"histogram_vs_block_average", true, ""};
    ShapeSpec spec = make_halfspace_step(2, 4.0);
    for (int i = 0; i < 20 && e.pass; ++i) {
      ObservationGrid obs = sample_to_grid(spec, 32, 0.5, seed + 100 + i);
      HistogramField field = build_histogram(obs, 0.125);
      // direct block average on the 8x8 cell grid
      int m = field.cells_per_axis;
      std::vector<double> sums(static_cast<std::size_t>(m) * m, 0.0);
      std::vector<int> counts(static_cast<std::size_t>(m) * m, 0);
      for (int r = 0; r < 32; ++r)
        for (int c = 0; c < 32; ++c) {
          int cr = r * m / 32;
          int cc = c * m / 32;
          sums[static_cast<std::size_t>(cr) * m + cc] += obs.values[static_cast<std::size_t>(r) * 32 + c];
          counts[static_cast<std::size_t>(cr) * m + cc] += 1;
        }
      for (std::size_t c = 0; c < sums.size(); ++c) {
        if (counts[c] != field.counts[c] ||
            std::abs(sums[c] / counts[c] - field.means[c]) > 1e-12) {
          e.pass = false;
          e.detail = "grid " + std::to_string(i);
          break;
        }
      }
    }
    report.entries.push_back(e);
  }

  return report;
}

}  // namespace jumptopo
