#pragma once

#include <cstdint>
#include <random>

namespace jumptopo {

// Deterministic standard-normal stream. std::normal_distribution is not
// pinned by the standard, so the same seed can give different draws across
// implementations; this class fixes the whole pipeline (mt19937_64, 53-bit
// uniforms, Box-Muller) so results are reproducible everywhere.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : gen_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double next();

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace jumptopo
