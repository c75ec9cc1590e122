#pragma once

// Direct spin-weighted spherical harmonic transforms on a SphereGrid.
//
// Both directions are separable: a DFT over φ per ring, then the
// Gauss–Legendre θ-quadrature per m. Cost is O(L³). Summation order is
// fixed (ascending j, then m, then θ ring) so results are reproducible.

#include <iosfwd>
#include <map>
#include <utility>

#include "swsh/grid.hpp"

namespace swsh {

inline constexpr double kCoefficientZero = 1e-13;

/// Sparse a_jm at fixed spin weight; entries with j < |s| never exist.
class CoefficientSet {
 public:
  using Key = std::pair<int, int>;  // (j, m)

  CoefficientSet() = default;
  CoefficientSet(int spin_weight, int band_limit);

  int spin_weight() const noexcept { return spin_weight_; }
  int band_limit() const noexcept { return band_limit_; }
  const std::map<Key, cdouble>& entries() const noexcept { return entries_; }

  cdouble get(int j, int m) const;
  /// Stores value; throws InvalidMode / BandLimitExceeded for bad (j, m).
  /// Values below kCoefficientZero are stored as exact zeros (erased).
  void set(int j, int m, cdouble value);
  void add(int j, int m, cdouble value);

  /// Σ |a_jm|².
  double norm_squared() const;
  bool empty() const noexcept { return entries_.empty(); }

 private:
  int spin_weight_ = 0;
  int band_limit_ = 0;
  std::map<Key, cdouble> entries_;
};

/// max |a - b| over the union of entries.
double max_abs_difference(const CoefficientSet& a, const CoefficientSet& b);

CoefficientSet operator+(const CoefficientSet& a, const CoefficientSet& b);
CoefficientSet operator*(cdouble scale, const CoefficientSet& c);

/// Projections onto every sY_jm with |s| <= j <= L via the grid quadrature.
CoefficientSet analyze(const GridFunction& f);

/// Σ a_jm sY_jm at every node. Throws BandLimitExceeded if c.L > grid L.
GridFunction synthesize(const CoefficientSet& c, const GridPtr& grid);

/// Σ a_jm sY_jm at one interior point.
cdouble evaluate(const CoefficientSet& c, double theta, double phi);

/// Synthesized value together with its analytic ∂θ, ∂²θ, ∂φ and ∂²φ.
struct SynthesizedPartials {
  GridFunction value;
  GridFunction dtheta;
  GridFunction dtheta2;
  GridFunction dphi;
  GridFunction dphi2;
};
SynthesizedPartials synthesize_partials(const CoefficientSet& c, const GridPtr& grid);

/// Numerical rank of the analyzed coefficient vectors of sY_jm, |m| <= j,
/// sampled on grid. Equals 2j+1 when j >= |s| and 0 otherwise.
int independent_mode_count(const GridPtr& grid, int s, int j);

void write_coefficients_json(std::ostream& out, const CoefficientSet& c);
CoefficientSet read_coefficients_json(std::istream& in);

}  // namespace swsh
