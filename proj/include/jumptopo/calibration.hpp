#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace jumptopo {

// Slowly diverging sequence used on the unknown-constant branches of the
// calibrations. Defaults to log n (natural log); a fixed positive constant is
// supported so known and unknown branches can be compared directly.
struct SnRule {
  enum class Kind { LogN, Constant };
  Kind kind = Kind::LogN;
  double constant = 1.0;

  double value(std::size_t n) const;

  static SnRule log_n() { return {Kind::LogN, 1.0}; }
  static SnRule fixed(double c);
};

// Tuning constants for one estimation run. All logs in the formulas behind
// these values are natural logs.
struct CalibrationParams {
  double cell_width = 0.0;       // histogram cell width, clamped to (0, 1/2]
  double radius = 0.0;           // local-range neighborhood radius
  double survival_offset = 0.0;  // minimum persistence for counted features
  double jump_threshold = 0.0;   // local range at or above this marks a jump cell
  bool sigma_known = true;
  bool mu_known = true;
  SnRule sn;
};

// Histogram cell width for n samples in dimension d. With known noise level
// the width is 2 * (512 sigma^2 / jump_floor^2)^(1/d) * (log(n^2)/n)^(1/d);
// with sigma unknown the leading constant is replaced by sn(n). The result is
// clamped to (0, 1/2]. sigma == 0 is rejected: the formula degenerates and a
// noiseless run should pick its width explicitly.
double calibrate_cell_width(std::size_t n, int dim, std::optional<double> sigma,
                            double jump_floor, const SnRule& sn = SnRule::log_n(),
                            std::vector<std::string>* notes = nullptr);

// Local-range neighborhood radius: (1 + sqrt(d)) * h / mu when the reach
// regularity mu is known, sn(n) * h otherwise.
double calibrate_radius(std::size_t n, double cell_width, int dim,
                        std::optional<double> mu, const SnRule& sn = SnRule::log_n());

// Persistence survival offset: 2 r / mu^2 when mu is known, sn(n) * r
// otherwise.
double calibrate_survival_offset(std::size_t n, double radius, std::optional<double> mu,
                                 const SnRule& sn = SnRule::log_n());

}  // namespace jumptopo
