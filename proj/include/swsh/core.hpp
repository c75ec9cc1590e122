#pragma once

// Spin-weighted spherical harmonics sY_jm via the Goldberg closed form.
//
// Convention: everything here is parameterized by the spin weight s. A
// massless state of helicity h is described by a function of spin weight
// s = -h, so the helicity-h eigenstates are sY_jm with s = -h. See
// docs/conventions.md.

#include <complex>
#include <cstddef>
#include <vector>

#include "swsh/error.hpp"

namespace swsh {

using cdouble = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Index triple (s, j, m) of one harmonic. Valid when j >= |s| and j >= |m|.
struct SWMode {
  int s = 0;
  int j = 0;
  int m = 0;

  bool valid() const noexcept;
  friend bool operator==(const SWMode&, const SWMode&) = default;
};

/// Throws Error{InvalidMode} unless the mode is valid.
void require_valid(const SWMode& mode);

enum class Pole { North, South };

/// One term of the Goldberg sum after the stability rewrite
///   (sin θ/2)^{2j} (cot θ/2)^{2q+s-m} = (cos θ/2)^{2q+s-m} (sin θ/2)^{2j-2q-s+m}.
struct GoldbergTerm {
  int q = 0;
  long double log_magnitude = 0.0L;  // log of factorial ratio * binomials
  int sign = 1;
  int cos_power = 0;  // 2q+s-m
  int sin_power = 0;  // 2j-2q-s+m
};

/// Summation range [q_min, q_max] of the Goldberg sum.
struct QRange {
  int lo = 0;
  int hi = -1;
};
QRange goldberg_q_range(const SWMode& mode);

/// sqrt((2j+1)/4π); the remaining prefactor lives in the terms.
double normalization(const SWMode& mode);

/// Terms of the sum; the factorial part of the prefactor is folded into
/// log_magnitude.
std::vector<GoldbergTerm> goldberg_terms(const SWMode& mode);

/// log(n!) backed by a table sized from the configured j-max
/// (default 64, env SWSH_JMAX_TABLE). Falls back to lgamma past the table.
/// Extended precision: the Goldberg sum cancels heavily near the equator
/// and the log/exp round trip would otherwise cost ~1e-11 at j = 16.
class LogFactorialTable {
 public:
  explicit LogFactorialTable(int jmax);

  long double operator()(int n) const;
  int jmax() const noexcept { return jmax_; }

  static const LogFactorialTable& instance();

 private:
  int jmax_;
  std::vector<long double> table_;
};

inline constexpr int kDefaultJmax = 64;

/// Real θ-profile d^order/dθ^order of sY_jm, i.e. the value at φ = 0.
/// order 0, 1 or 2. Requires θ in (0, π).
double swsh_profile(const SWMode& mode, double theta, int order = 0);

/// sY_jm(θ, φ). θ must be strictly inside (0, π).
cdouble eval_swsh(const SWMode& mode, double theta, double phi);

/// ∂θ or ∂²θ of sY_jm, analytic term-by-term.
cdouble eval_swsh_dtheta(const SWMode& mode, double theta, double phi, int order);

/// Coefficient c with sY_jm ~ c e^{imφ} at the pole. Nonzero only for
/// m = -s (North) and m = s (South).
double eval_swsh_pole_limit(const SWMode& mode, Pole pole);

}  // namespace swsh
