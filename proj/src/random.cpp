#include "swsh/random.hpp"

#include <cmath>

namespace swsh {

double Rng::normal() {
  double u = uniform();
  while (u <= 0.0) u = uniform();
  const double v = uniform();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * kPi * v);
}

CoefficientSet random_coefficients(Rng& rng, int s, int band_limit) {
  CoefficientSet c(s, band_limit);
  for (int j = std::abs(s); j <= band_limit; ++j) {
    for (int m = -j; m <= j; ++m) c.set(j, m, rng.complex_normal());
  }
  return c;
}

EmbeddedSection random_section(Rng& rng, const GridPtr& grid, int h, int band_limit) {
  EmbeddedSection section = embed(synthesize(random_coefficients(rng, -h, band_limit), grid));
  section *= 1.0 / norm(section);
  return section;
}

}  // namespace swsh
