#include "swsh/grid.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace swsh {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * k - 1.0) * z * p2 - (k - 1.0) * p3) / k;
      }
      dp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) <= 1e-15) break;
    }
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    nodes[lo] = -z;
    nodes[hi] = z;
    weights[lo] = weights[hi] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  if (n % 2 == 1) nodes[static_cast<std::size_t>(n / 2)] = 0.0;
}

SphereGrid::SphereGrid(int band_limit, int theta_count, int phi_count)
    : band_limit_(band_limit), phi_count_(phi_count) {
  std::vector<double> x;
  std::vector<double> w;
  gauss_legendre(theta_count, x, w);
  // θ ascending means cos θ descending.
  for (int i = theta_count - 1; i >= 0; --i) {
    const double c = x[static_cast<std::size_t>(i)];
    cos_theta_.push_back(c);
    theta_.push_back(std::acos(c));
    sin_theta_.push_back(std::sqrt((1.0 - c) * (1.0 + c)));
    weights_.push_back(w[static_cast<std::size_t>(i)]);
  }
}

double SphereGrid::phi(int k) const { return 2.0 * kPi * k / phi_count_; }

double SphereGrid::phi_weight() const noexcept { return 2.0 * kPi / phi_count_; }

Vec3 SphereGrid::k_hat(int i, int k) const {
  const double st = sin_theta(i);
  const double ct = cos_theta(i);
  const double p = phi(k);
  return {st * std::cos(p), st * std::sin(p), ct};
}

Vec3 SphereGrid::e_theta(int i, int k) const {
  const double st = sin_theta(i);
  const double ct = cos_theta(i);
  const double p = phi(k);
  return {ct * std::cos(p), ct * std::sin(p), -st};
}

Vec3 SphereGrid::e_phi(int /*i*/, int k) const {
  const double p = phi(k);
  return {-std::sin(p), std::cos(p), 0.0};
}

bool SphereGrid::same_layout(const SphereGrid& other) const noexcept {
  return band_limit_ == other.band_limit_ && phi_count_ == other.phi_count_ &&
         theta_count() == other.theta_count();
}

GridPtr make_grid(int band_limit) {
  if (band_limit < 0) {
    throw Error(ErrorCode::DomainError, "band limit must be nonnegative");
  }
  return std::make_shared<const SphereGrid>(band_limit, band_limit + 1, 2 * band_limit + 1);
}

GridFunction::GridFunction(GridPtr g, int s)
    : grid(std::move(g)), spin_weight(s), samples(grid->node_count(), cdouble{}) {}

GridFunction::GridFunction(GridPtr g, int s, std::vector<cdouble> values)
    : grid(std::move(g)), spin_weight(s), samples(std::move(values)) {
  if (samples.size() != grid->node_count()) {
    throw Error(ErrorCode::GridMismatch, "sample count does not match grid");
  }
}

FrameField make_frame_field(const SphereGrid& grid, std::span<const double> xi) {
  if (!xi.empty() && xi.size() != grid.node_count()) {
    throw Error(ErrorCode::GridMismatch, "frame angle field does not match grid");
  }
  FrameField frame;
  frame.a.reserve(grid.node_count());
  frame.b.reserve(grid.node_count());
  frame.k_hat.reserve(grid.node_count());
  for (int i = 0; i < grid.theta_count(); ++i) {
    for (int k = 0; k < grid.phi_count(); ++k) {
      const double angle = xi.empty() ? 0.0 : xi[grid.index(i, k)];
      const double c = std::cos(angle);
      const double s = std::sin(angle);
      const Vec3 et = grid.e_theta(i, k);
      const Vec3 ep = grid.e_phi(i, k);
      Vec3 a{};
      Vec3 b{};
      for (int d = 0; d < 3; ++d) {
        a[d] = c * et[d] - s * ep[d];
        b[d] = s * et[d] + c * ep[d];
      }
      frame.a.push_back(a);
      frame.b.push_back(b);
      frame.k_hat.push_back(grid.k_hat(i, k));
    }
  }
  return frame;
}

GridFunction sample_swsh(const GridPtr& grid, const SWMode& mode) {
  require_valid(mode);
  if (mode.j > grid->band_limit()) {
    throw Error(ErrorCode::BandLimitExceeded,
                "mode j=" + std::to_string(mode.j) + " exceeds band limit L=" +
                    std::to_string(grid->band_limit()));
  }
  GridFunction f(grid, mode.s);
  for (int i = 0; i < grid->theta_count(); ++i) {
    const double profile = swsh_profile(mode, grid->theta(i), 0);
    for (int k = 0; k < grid->phi_count(); ++k) {
      f.at(i, k) = profile * std::polar(1.0, mode.m * grid->phi(k));
    }
  }
  return f;
}

cdouble inner_product(const GridFunction& fa, const GridFunction& fb) {
  if (!fa.grid->same_layout(*fb.grid)) {
    throw Error(ErrorCode::GridMismatch, "inner product of functions on different grids");
  }
  if (fa.spin_weight != fb.spin_weight) {
    throw Error(ErrorCode::SpinWeightMismatch,
                "inner product of spin weights " + std::to_string(fa.spin_weight) + " and " +
                    std::to_string(fb.spin_weight));
  }
  const SphereGrid& grid = *fa.grid;
  cdouble total{};
  for (int i = 0; i < grid.theta_count(); ++i) {
    cdouble ring{};
    for (int k = 0; k < grid.phi_count(); ++k) {
      ring += std::conj(fa.at(i, k)) * fb.at(i, k);
    }
    total += grid.theta_weight(i) * ring;
  }
  return total * grid.phi_weight();
}

double norm(const GridFunction& f) { return std::sqrt(inner_product(f, f).real()); }

GridFunction apply_gauge(const GridFunction& f, std::span<const double> xi) {
  if (xi.size() != f.samples.size()) {
    throw Error(ErrorCode::GridMismatch, "gauge field does not match grid");
  }
  GridFunction out = f;
  if (out.frame_angle.empty()) out.frame_angle.assign(f.samples.size(), 0.0);
  for (std::size_t n = 0; n < xi.size(); ++n) {
    out.samples[n] *= std::polar(1.0, f.spin_weight * xi[n]);
    out.frame_angle[n] += xi[n];
  }
  return out;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  if (s.find_first_of(".eni") == std::string::npos) s += ".0";
  return s;
}

void write_grid_csv(std::ostream& out, const GridFunction& f) {
  const SphereGrid& grid = *f.grid;
  out << "# spin_weight=" << f.spin_weight << " L=" << grid.band_limit()
      << " frame=" << (f.spherical_frame() ? "spherical" : "rotated") << '\n';
  for (int i = 0; i < grid.theta_count(); ++i) {
    for (int k = 0; k < grid.phi_count(); ++k) {
      const cdouble v = f.at(i, k);
      out << format_double(grid.theta(i)) << ',' << format_double(grid.phi(k)) << ','
          << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
    }
  }
}

namespace {

[[noreturn]] void parse_fail(const std::string& what) {
  throw Error(ErrorCode::ParseError, "grid CSV: " + what);
}

double parse_number(const std::string& field) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &used);
  } catch (const std::exception&) {
    parse_fail("bad number '" + field + "'");
  }
  if (used != field.size()) parse_fail("bad number '" + field + "'");
  return v;
}

}  // namespace

GridFunction read_grid_csv(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || header.rfind("# ", 0) != 0) parse_fail("missing header");
  int spin = 0;
  int band = -1;
  std::string frame;
  {
    std::istringstream hs(header.substr(2));
    std::string token;
    bool have_spin = false;
    while (hs >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos) parse_fail("bad header token '" + token + "'");
      const std::string key = token.substr(0, eq);
      const std::string value = token.substr(eq + 1);
      try {
        if (key == "spin_weight") {
          spin = std::stoi(value);
          have_spin = true;
        } else if (key == "L") {
          band = std::stoi(value);
        } else if (key == "frame") {
          frame = value;
        }
      } catch (const std::exception&) {
        parse_fail("bad header value '" + token + "'");
      }
    }
    if (!have_spin || band < 0) parse_fail("header needs spin_weight and L");
    if (frame != "spherical") parse_fail("only frame=spherical can be read");
  }

  const GridPtr grid = make_grid(band);
  GridFunction f(grid, spin);
  std::size_t row = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (row >= grid->node_count()) parse_fail("too many rows");
    std::istringstream ls(line);
    std::string fields[4];
    for (int c = 0; c < 4; ++c) {
      if (!std::getline(ls, fields[c], c < 3 ? ',' : '\n')) parse_fail("short row");
    }
    const int i = static_cast<int>(row / static_cast<std::size_t>(grid->phi_count()));
    const int k = static_cast<int>(row % static_cast<std::size_t>(grid->phi_count()));
    const double theta = parse_number(fields[0]);
    const double phi = parse_number(fields[1]);
    if (std::abs(theta - grid->theta(i)) > 1e-12 || std::abs(phi - grid->phi(k)) > 1e-12) {
      parse_fail("row " + std::to_string(row) + " is not at the expected grid node");
    }
    f.samples[row] = {parse_number(fields[2]), parse_number(fields[3])};
    ++row;
  }
  if (row != grid->node_count()) parse_fail("expected " + std::to_string(grid->node_count()) +
                                            " rows, got " + std::to_string(row));
  return f;
}

}  // namespace swsh
