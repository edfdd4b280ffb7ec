#ifndef HARDMONO_RNG_HPP
#define HARDMONO_RNG_HPP

#include <cstdint>
#include <random>

#include "hardmono/graph.hpp"

namespace hardmono {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  // Inclusive bounds.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// Glorot uniform: +-sqrt(6 / (fan_in + fan_out)).
Mat glorot_uniform(int rows, int cols, Rng& rng);

}  // namespace hardmono

#endif
