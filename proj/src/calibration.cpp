#include "jumptopo/calibration.hpp"

#include <cmath>

#include "jumptopo/lattice.hpp"

namespace jumptopo {

double SnRule::value(std::size_t n) const {
  switch (kind) {
    case Kind::LogN:
      return std::log(static_cast<double>(n));
    case Kind::Constant:
      return constant;
  }
  throw std::invalid_argument("sn rule: unknown kind");
}

SnRule SnRule::fixed(double c) {
  require(c > 0.0, "sn rule: constant must be positive");
  return {Kind::Constant, c};
}

namespace {

// log(n^2)/n with natural log, the sample-size factor shared by both
// calibration branches.
double rate_factor(std::size_t n) {
  double nd = static_cast<double>(n);
  return std::log(nd * nd) / nd;
}

}  // namespace

double calibrate_cell_width(std::size_t n, int dim, std::optional<double> sigma,
                            double jump_floor, const SnRule& sn,
                            std::vector<std::string>* notes) {
  require(n >= 2, "calibrate_cell_width: need at least two samples");
  require(dim >= 1 && dim <= kMaxDim, "calibrate_cell_width: dim out of range");
  require(jump_floor > 0.0, "calibrate_cell_width: jump floor must be positive");

  double inv_d = 1.0 / dim;
  double lead;
  if (sigma.has_value()) {
    require(*sigma > 0.0,
            "calibrate_cell_width: sigma must be positive when known"
            " (pick the width explicitly for noiseless data)");
    lead = 2.0 * std::pow(512.0 * (*sigma) * (*sigma) / (jump_floor * jump_floor), inv_d);
  } else {
    lead = sn.value(n);
    require(lead > 0.0, "calibrate_cell_width: sn(n) must be positive");
  }

  double h = lead * std::pow(rate_factor(n), inv_d);
  if (h > 0.5) {
    h = 0.5;
    if (notes) notes->push_back("cell width clamped to 1/2");
  }
  double side = std::pow(static_cast<double>(n), inv_d);
  if (h * side < 1.0 && notes)
    notes->push_back("cell width below one data-grid step; histogram cells may be empty");
  return h;
}

double calibrate_radius(std::size_t n, double cell_width, int dim,
                        std::optional<double> mu, const SnRule& sn) {
  require(cell_width > 0.0, "calibrate_radius: cell width must be positive");
  require(dim >= 1 && dim <= kMaxDim, "calibrate_radius: dim out of range");
  if (mu.has_value()) {
    require(*mu > 0.0 && *mu <= 1.0, "calibrate_radius: mu must lie in (0, 1]");
    return (1.0 + std::sqrt(static_cast<double>(dim))) * cell_width / *mu;
  }
  require(n >= 2, "calibrate_radius: need at least two samples");
  return sn.value(n) * cell_width;
}

double calibrate_survival_offset(std::size_t n, double radius, std::optional<double> mu,
                                 const SnRule& sn) {
  require(radius > 0.0, "calibrate_survival_offset: radius must be positive");
  if (mu.has_value()) {
    require(*mu > 0.0 && *mu <= 1.0, "calibrate_survival_offset: mu must lie in (0, 1]");
    return 2.0 * radius / (*mu * *mu);
  }
  require(n >= 2, "calibrate_survival_offset: need at least two samples");
  return sn.value(n) * radius;
}

}  // namespace jumptopo
