#include <algorithm>
#include <array>
#include <cmath>

#include "swsh/grid.hpp"
#include "swsh/transform.hpp"

namespace swsh {

PoleEstimate pole_limit_extrapolate(const GridFunction& f, Pole pole, int h) {
  const SphereGrid& grid = *f.grid;
  if (grid.theta_count() < 3) {
    throw Error(ErrorCode::InsufficientNodes,
                "pole extrapolation needs at least 3 theta rings; grid has " +
                    std::to_string(grid.theta_count()));
  }
  const CoefficientSet c = analyze(f);

  // The expansion must reproduce f on the grid rings nearest the pole;
  // otherwise the resampled rings describe its smooth projection, not f.
  double misfit = 0.0;
  const int rings = grid.theta_count();
  for (int n = 0; n < 3; ++n) {
    const int i = pole == Pole::North ? n : rings - 1 - n;
    for (int k = 0; k < grid.phi_count(); ++k) {
      misfit = std::max(misfit, std::abs(evaluate(c, grid.theta(i), grid.phi(k)) - f.at(i, k)));
    }
  }

  // Rings at distance t, t/2, t/4 from the pole. Quadratic extrapolation in
  // the distance to 0 (Neville), order-2 Richardson with ratio 2.
  constexpr std::array<double, 3> kScale = {1.0, 0.5, 0.25};
  const double sign = pole == Pole::North ? -1.0 : 1.0;
  std::vector<cdouble> limits(static_cast<std::size_t>(grid.phi_count()));
  for (int k = 0; k < grid.phi_count(); ++k) {
    const double phi = grid.phi(k);
    std::array<cdouble, 3> g{};
    for (std::size_t r = 0; r < kScale.size(); ++r) {
      const double t = kPoleRingOffset * kScale[r];
      const double theta = pole == Pole::North ? t : kPi - t;
      g[r] = evaluate(c, theta, phi) * std::polar(1.0, sign * h * phi);
    }
    const cdouble r1a = 2.0 * g[1] - g[0];
    const cdouble r1b = 2.0 * g[2] - g[1];
    limits[static_cast<std::size_t>(k)] = (4.0 * r1b - r1a) / 3.0;
  }
  cdouble mean{};
  for (const auto& v : limits) mean += v;
  mean /= static_cast<double>(limits.size());
  double spread = 0.0;
  for (const auto& v : limits) spread = std::max(spread, std::abs(v - mean));
  return {mean, std::max(spread, misfit)};
}

}  // namespace swsh
