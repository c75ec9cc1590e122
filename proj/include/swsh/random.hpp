#pragma once

// Seeded draws for randomized checks. The bit stream comes from
// std::mt19937_64, whose output sequence the standard fixes, and the
// conversions below are written out so results do not depend on the
// standard library's distribution implementations.

#include <cstdint>
#include <random>

#include "swsh/bundle.hpp"
#include "swsh/transform.hpp"

namespace swsh {

class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Standard normal via Box–Muller.
  double normal();
  cdouble complex_normal() { return {normal(), normal()}; }

 private:
  std::mt19937_64 engine_;
};

/// Gaussian a_jm for every |s| <= j <= band_limit.
CoefficientSet random_coefficients(Rng& rng, int s, int band_limit);

/// Unit-norm embedded section whose profile has the given band limit.
EmbeddedSection random_section(Rng& rng, const GridPtr& grid, int h, int band_limit);

}  // namespace swsh
