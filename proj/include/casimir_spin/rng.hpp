// Deterministic random draws for verification suites.  The mt19937_64
// stream is fixed by the standard; mapping to doubles by hand (instead of
// std::uniform_real_distribution, whose algorithm is implementation
// defined) keeps draw sequences identical across toolchains.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace casimir_spin {

class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}

  // uniform in [0, 1)
  double unit() { return double(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + int(double(hi - lo + 1) * unit());
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace casimir_spin
