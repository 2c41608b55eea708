#include "jumptopo/rng.hpp"

#include <cmath>
#include <numbers>

namespace jumptopo {

double GaussianStream::next() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller on (0,1] x [0,1): 1 - uniform() keeps the log argument away
  // from zero.
  double u1 = 1.0 - uniform();
  double u2 = uniform();
  double radius = std::sqrt(-2.0 * std::log(u1));
  double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  have_spare_ = true;
  return radius * std::cos(angle);
}

}  // namespace jumptopo
