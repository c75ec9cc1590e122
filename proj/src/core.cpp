#include "swsh/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

namespace swsh {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidMode: return "InvalidMode";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::BandLimitExceeded: return "BandLimitExceeded";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::SpinWeightMismatch: return "SpinWeightMismatch";
    case ErrorCode::InsufficientNodes: return "InsufficientNodes";
    case ErrorCode::UnsupportedHelicity: return "UnsupportedHelicity";
    case ErrorCode::NegativeSpin: return "NegativeSpin";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

bool SWMode::valid() const noexcept {
  return j >= 0 && j >= std::abs(s) && j >= std::abs(m);
}

void require_valid(const SWMode& mode) {
  if (mode.j < std::abs(mode.s)) {
    throw Error(ErrorCode::InvalidMode,
                "invalid mode (s=" + std::to_string(mode.s) + ", j=" + std::to_string(mode.j) +
                    ", m=" + std::to_string(mode.m) + "): j < |s|");
  }
  if (std::abs(mode.m) > mode.j) {
    throw Error(ErrorCode::InvalidMode,
                "invalid mode (s=" + std::to_string(mode.s) + ", j=" + std::to_string(mode.j) +
                    ", m=" + std::to_string(mode.m) + "): |m| > j");
  }
}

LogFactorialTable::LogFactorialTable(int jmax) : jmax_(std::max(jmax, 0)) {
  // j+m and j-s reach 2*jmax.
  const int n_max = 2 * jmax_ + 1;
  table_.resize(static_cast<std::size_t>(n_max) + 1);
  table_[0] = 0.0L;
  for (int n = 1; n <= n_max; ++n) {
    table_[static_cast<std::size_t>(n)] = table_[static_cast<std::size_t>(n - 1)] + std::log(static_cast<long double>(n));
  }
}

long double LogFactorialTable::operator()(int n) const {
  if (n < 0) return std::numeric_limits<long double>::infinity();
  if (static_cast<std::size_t>(n) < table_.size()) return table_[static_cast<std::size_t>(n)];
  return std::lgamma(static_cast<long double>(n) + 1.0L);
}

const LogFactorialTable& LogFactorialTable::instance() {
  static const LogFactorialTable table = [] {
    int jmax = kDefaultJmax;
    if (const char* env = std::getenv("SWSH_JMAX_TABLE")) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end != env && v > 0 && v < 100000) jmax = static_cast<int>(v);
    }
    return LogFactorialTable(jmax);
  }();
  return table;
}

QRange goldberg_q_range(const SWMode& mode) {
  return {std::max(0, mode.m - mode.s), std::min(mode.j - mode.s, mode.j + mode.m)};
}

namespace {

long double log_binomial(const LogFactorialTable& lf, int n, int k) {
  return lf(n) - lf(k) - lf(n - k);
}

struct ExpandedTerm {
  long double log_magnitude;
  int sign;
  int cos_power;
  int sin_power;
};

// d/dθ [cos^a(θ/2) sin^b(θ/2)] = -(a/2) cos^{a-1} sin^{b+1} + (b/2) cos^{a+1} sin^{b-1}
std::vector<ExpandedTerm> differentiate(const std::vector<ExpandedTerm>& terms) {
  std::vector<ExpandedTerm> out;
  out.reserve(2 * terms.size());
  for (const auto& t : terms) {
    if (t.cos_power > 0) {
      out.push_back({t.log_magnitude + std::log(0.5L * t.cos_power), -t.sign, t.cos_power - 1,
                     t.sin_power + 1});
    }
    if (t.sin_power > 0) {
      out.push_back({t.log_magnitude + std::log(0.5L * t.sin_power), t.sign, t.cos_power + 1,
                     t.sin_power - 1});
    }
  }
  return out;
}

void require_interior(double theta) {
  if (!(theta > 0.0 && theta < kPi)) {
    throw Error(ErrorCode::DomainError,
                "theta must lie strictly inside (0, pi); got " + std::to_string(theta));
  }
}

}  // namespace

double normalization(const SWMode& mode) {
  return std::sqrt((2.0 * mode.j + 1.0) / (4.0 * kPi));
}

std::vector<GoldbergTerm> goldberg_terms(const SWMode& mode) {
  require_valid(mode);
  const auto& lf = LogFactorialTable::instance();
  const int s = mode.s;
  const int j = mode.j;
  const int m = mode.m;
  // Factorial ratio only; sqrt((2j+1)/4π) is applied outside log space.
  // Grouped so the ratio is exactly 0 when m = ±s.
  const long double log_norm = 0.5L * ((lf(j + m) - lf(j + s)) + (lf(j - m) - lf(j - s)));
  const QRange range = goldberg_q_range(mode);
  std::vector<GoldbergTerm> terms;
  for (int q = range.lo; q <= range.hi; ++q) {
    GoldbergTerm t;
    t.q = q;
    t.log_magnitude = log_norm + log_binomial(lf, j - s, q) + log_binomial(lf, j + s, q + s - m);
    t.sign = ((j - q - s - m) % 2 == 0) ? 1 : -1;
    t.cos_power = 2 * q + s - m;
    t.sin_power = 2 * j - 2 * q - s + m;
    terms.push_back(t);
  }
  return terms;
}

double swsh_profile(const SWMode& mode, double theta, int order) {
  if (order < 0 || order > 2) {
    throw Error(ErrorCode::UnsupportedOrder,
                "derivative order must be 0, 1 or 2; got " + std::to_string(order));
  }
  require_valid(mode);
  require_interior(theta);

  std::vector<ExpandedTerm> terms;
  for (const auto& g : goldberg_terms(mode)) {
    terms.push_back({g.log_magnitude, g.sign, g.cos_power, g.sin_power});
  }
  for (int k = 0; k < order; ++k) terms = differentiate(terms);
  if (terms.empty()) return 0.0;

  const long double half = 0.5L * static_cast<long double>(theta);
  const long double log_c = std::log(std::cos(half));
  const long double log_s = std::log(std::sin(half));
  std::vector<long double> logs(terms.size());
  long double log_max = -std::numeric_limits<long double>::infinity();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    logs[i] = terms[i].log_magnitude + terms[i].cos_power * log_c + terms[i].sin_power * log_s;
    log_max = std::max(log_max, logs[i]);
  }
  long double acc = 0.0L;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    acc += terms[i].sign * std::exp(logs[i] - log_max);
  }
  return normalization(mode) * static_cast<double>(acc * std::exp(log_max));
}

cdouble eval_swsh(const SWMode& mode, double theta, double phi) {
  const double profile = swsh_profile(mode, theta, 0);
  return profile * std::polar(1.0, mode.m * phi);
}

cdouble eval_swsh_dtheta(const SWMode& mode, double theta, double phi, int order) {
  if (order != 1 && order != 2) {
    throw Error(ErrorCode::UnsupportedOrder,
                "eval_swsh_dtheta supports order 1 or 2; got " + std::to_string(order));
  }
  return swsh_profile(mode, theta, order) * std::polar(1.0, mode.m * phi);
}

double eval_swsh_pole_limit(const SWMode& mode, Pole pole) {
  // At the North pole sin(θ/2) -> 0 so only terms with sin_power == 0
  // survive; at the South pole only cos_power == 0 survives.
  long double value = 0.0L;
  for (const auto& t : goldberg_terms(mode)) {
    const bool survives = pole == Pole::North ? t.sin_power == 0 : t.cos_power == 0;
    if (survives) value += t.sign * std::exp(t.log_magnitude);
  }
  return normalization(mode) * static_cast<double>(value);
}

}  // namespace swsh
