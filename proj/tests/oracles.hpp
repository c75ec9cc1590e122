#pragma once

// Reference implementations used only by the tests. None of these call into
// the library's evaluation path.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace oracle {

using cdouble = std::complex<double>;
inline constexpr double kPi = 3.14159265358979323846;

/// Ordinary Y_lm with the Condon–Shortley phase, from the standard upward
/// recurrence for normalized associated Legendre functions.
inline cdouble legendre_ylm(int l, int m, double theta, double phi) {
  const int am = std::abs(m);
  const double x = std::cos(theta);
  const double sx = std::sin(theta);
  // P̄_m^m = (-1)^m sqrt((2m+1)/(4π) (2m-1)!!/(2m)!!) sin^m
  double pmm = std::sqrt(1.0 / (4.0 * kPi));
  for (int k = 1; k <= am; ++k) {
    pmm *= -sx * std::sqrt((2.0 * k + 1.0) / (2.0 * k));
  }
  double value = pmm;
  if (l > am) {
    double p_prev = pmm;
    double p_cur = x * std::sqrt(2.0 * am + 3.0) * pmm;
    for (int ll = am + 2; ll <= l; ++ll) {
      const double a = std::sqrt((4.0 * ll * ll - 1.0) / (double(ll) * ll - double(am) * am));
      const double b = std::sqrt(((ll - 1.0) * (ll - 1.0) - double(am) * am) /
                                 (4.0 * (ll - 1.0) * (ll - 1.0) - 1.0));
      const double next = a * (x * p_cur - b * p_prev);
      p_prev = p_cur;
      p_cur = next;
    }
    value = p_cur;
  }
  cdouble y = value * std::polar(1.0, am * phi);
  if (m < 0) y = ((am % 2 == 0) ? 1.0 : -1.0) * std::conj(y);
  return y;
}

/// Composite Simpson rule on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

/// Central finite difference of order 1 or 2.
inline double central_difference(const std::function<double(double)>& f, double x, double h,
                                 int order) {
  if (order == 1) return (f(x + h) - f(x - h)) / (2.0 * h);
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

/// Multiplicities of V_a ⊗ O for a finite O, by direct Clebsch–Gordan
/// enumeration.
inline std::map<int, std::int64_t> tensor_with(int a, const std::map<int, std::int64_t>& o) {
  std::map<int, std::int64_t> out;
  for (const auto& [l, n] : o) {
    for (int j = std::abs(a - l); j <= a + l; ++j) out[j] += n;
  }
  return out;
}

/// Every O on [l_min, l_max] with multiplicities in [0, cap] whose V_a ⊗ O
/// agrees with target on j <= window. Pure enumeration,
/// (cap+1)^(l_max-l_min+1) candidates.
inline std::vector<std::map<int, std::int64_t>> brute_force_factor(
    const std::map<int, std::int64_t>& target, int a, int l_min, int l_max, int cap,
    int window) {
  std::vector<std::map<int, std::int64_t>> found;
  const int width = l_max - l_min + 1;
  std::vector<int> digits(static_cast<std::size_t>(width), 0);
  while (true) {
    std::map<int, std::int64_t> o;
    for (int d = 0; d < width; ++d) {
      if (digits[static_cast<std::size_t>(d)] != 0) o[l_min + d] = digits[static_cast<std::size_t>(d)];
    }
    const auto product = tensor_with(a, o);
    bool ok = true;
    for (int j = 0; j <= window && ok; ++j) {
      const auto pi = product.find(j);
      const auto ti = target.find(j);
      const std::int64_t p = pi == product.end() ? 0 : pi->second;
      const std::int64_t t = ti == target.end() ? 0 : ti->second;
      ok = p == t;
    }
    if (ok) found.push_back(o);
    int pos = 0;
    while (pos < width && ++digits[static_cast<std::size_t>(pos)] > cap) {
      digits[static_cast<std::size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == width) break;
  }
  return found;
}

}  // namespace oracle
