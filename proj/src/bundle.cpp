#include "swsh/bundle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace swsh {

namespace {

using Mat3 = std::array<std::array<cdouble, 3>, 3>;

constexpr cdouble kI{0.0, 1.0};

int levi_civita(int a, int b, int c) {
  if (a == b || b == c || a == c) return 0;
  return ((b - a + 3) % 3 == 1) ? 1 : -1;
}

Vec3 spherical_e_theta(double theta, double phi) {
  return {std::cos(theta) * std::cos(phi), std::cos(theta) * std::sin(phi), -std::sin(theta)};
}

Vec3 spherical_e_phi(double phi) { return {-std::sin(phi), std::cos(phi), 0.0}; }

Mat3 projector(const Vec3& k) {
  Mat3 p{};
  for (int b = 0; b < 3; ++b) {
    for (int c = 0; c < 3; ++c) p[b][c] = (b == c ? 1.0 : 0.0) - k[b] * k[c];
  }
  return p;
}

// (S_a)_{bc} = -i ε_{abc}
Mat3 spin_matrix(int a) {
  Mat3 s{};
  for (int b = 0; b < 3; ++b) {
    for (int c = 0; c < 3; ++c) s[b][c] = -kI * static_cast<double>(levi_civita(a, b, c));
  }
  return s;
}

Mat3 multiply(const Mat3& x, const Mat3& y) {
  Mat3 out{};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      for (int k = 0; k < 3; ++k) out[r][c] += x[r][k] * y[k][c];
    }
  }
  return out;
}

// Rodrigues rotation by psi about the unit axis v.
Mat3 rotation(const Vec3& v, double psi) {
  const double c = std::cos(psi);
  const double s = std::sin(psi);
  Mat3 r{};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      double cross = 0.0;
      for (int k = 0; k < 3; ++k) cross += levi_civita(a, k, b) * v[k];
      r[a][b] = (a == b ? c : 0.0) + s * cross + (1.0 - c) * v[a] * v[b];
    }
  }
  return r;
}

Vec3 apply_real(const Mat3& m, const Vec3& x) {
  Vec3 out{};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) out[a] += m[a][b].real() * x[b];
  }
  return out;
}

// out += M acting on one slot of a rank-1 or rank-2 tensor.
void accumulate_slot(const Mat3& m, std::span<const cdouble> in, std::span<cdouble> out, int rank,
                     int slot) {
  if (rank == 1) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) out[b] += m[b][c] * in[c];
    }
    return;
  }
  for (int b1 = 0; b1 < 3; ++b1) {
    for (int b2 = 0; b2 < 3; ++b2) {
      cdouble acc{};
      for (int c = 0; c < 3; ++c) {
        acc += slot == 0 ? m[b1][c] * in[3 * c + b2] : m[b2][c] * in[3 * b1 + c];
      }
      out[3 * b1 + b2] += acc;
    }
  }
}

// M^{⊗rank} applied in place.
void apply_every_slot(const Mat3& m, std::span<cdouble> t, int rank) {
  std::vector<cdouble> tmp(t.size());
  for (int slot = 0; slot < rank; ++slot) {
    std::fill(tmp.begin(), tmp.end(), cdouble{});
    accumulate_slot(m, t, tmp, rank, slot);
    std::copy(tmp.begin(), tmp.end(), t.begin());
  }
}

void project_all(EmbeddedSection& section) {
  const SphereGrid& grid = *section.grid;
  const int dim = section.dim();
  for (int i = 0; i < grid.theta_count(); ++i) {
    for (int k = 0; k < grid.phi_count(); ++k) {
      const std::size_t node = grid.index(i, k);
      apply_every_slot(projector(grid.k_hat(i, k)),
                       std::span<cdouble>(section.components).subspan(node * dim, dim),
                       section.rank());
    }
  }
}

std::vector<cdouble> tensor_power(const std::array<cdouble, 3>& e, int rank) {
  if (rank == 1) return {e[0], e[1], e[2]};
  std::vector<cdouble> out(9);
  for (int b1 = 0; b1 < 3; ++b1) {
    for (int b2 = 0; b2 < 3; ++b2) out[3 * b1 + b2] = e[b1] * e[b2];
  }
  return out;
}

// Derivative of e^{⊗rank} given e and de: Σ_slots e ⊗ .. de .. ⊗ e.
std::vector<cdouble> tensor_power_derivative(const std::array<cdouble, 3>& e,
                                             const std::array<cdouble, 3>& de, int rank) {
  if (rank == 1) return {de[0], de[1], de[2]};
  std::vector<cdouble> out(9);
  for (int b1 = 0; b1 < 3; ++b1) {
    for (int b2 = 0; b2 < 3; ++b2) out[3 * b1 + b2] = de[b1] * e[b2] + e[b1] * de[b2];
  }
  return out;
}

void require_same_shape(const EmbeddedSection& a, const EmbeddedSection& b) {
  if (!a.grid->same_layout(*b.grid) || a.helicity != b.helicity) {
    throw Error(ErrorCode::GridMismatch, "sections live on different grids or bundles");
  }
}

}  // namespace

void require_supported_helicity(int h) {
  if (std::abs(h) != 1 && std::abs(h) != 2) {
    throw Error(ErrorCode::UnsupportedHelicity,
                "embedded sections support |h| in {1, 2}; got h=" + std::to_string(h));
  }
}

EmbeddedSection::EmbeddedSection(GridPtr g, int h) : grid(std::move(g)), helicity(h) {
  require_supported_helicity(h);
  components.assign(grid->node_count() * static_cast<std::size_t>(dim()), cdouble{});
}

int EmbeddedSection::rank() const noexcept { return std::abs(helicity); }

EmbeddedSection& EmbeddedSection::operator+=(const EmbeddedSection& other) {
  require_same_shape(*this, other);
  for (std::size_t n = 0; n < components.size(); ++n) components[n] += other.components[n];
  return *this;
}

EmbeddedSection& EmbeddedSection::operator-=(const EmbeddedSection& other) {
  require_same_shape(*this, other);
  for (std::size_t n = 0; n < components.size(); ++n) components[n] -= other.components[n];
  return *this;
}

EmbeddedSection& EmbeddedSection::operator*=(cdouble scale) {
  for (auto& v : components) v *= scale;
  return *this;
}

EmbeddedSection operator+(EmbeddedSection a, const EmbeddedSection& b) { return a += b; }
EmbeddedSection operator-(EmbeddedSection a, const EmbeddedSection& b) { return a -= b; }
EmbeddedSection operator*(cdouble scale, EmbeddedSection a) { return a *= scale; }

EmbeddedSection VectorOperatorResult::along(const Vec3& v) const {
  EmbeddedSection out = v[0] * axis[0];
  out += v[1] * axis[1];
  out += v[2] * axis[2];
  return out;
}

std::vector<cdouble> helicity_basis(int h, double theta, double phi) {
  require_supported_helicity(h);
  const double sign = h > 0 ? 1.0 : -1.0;
  const Vec3 et = spherical_e_theta(theta, phi);
  const Vec3 ep = spherical_e_phi(phi);
  std::array<cdouble, 3> e{};
  for (int d = 0; d < 3; ++d) e[d] = (et[d] + sign * kI * ep[d]) / std::sqrt(2.0);
  return tensor_power(e, std::abs(h));
}

EmbeddedSection embed(const GridFunction& f) {
  const int h = -f.spin_weight;
  require_supported_helicity(h);
  const SphereGrid& grid = *f.grid;
  const FrameField frame = make_frame_field(grid, f.frame_angle);
  const double sign = h > 0 ? 1.0 : -1.0;
  EmbeddedSection section(f.grid, h);
  for (std::size_t node = 0; node < grid.node_count(); ++node) {
    std::array<cdouble, 3> m{};
    for (int d = 0; d < 3; ++d) {
      m[d] = (frame.a[node][d] + sign * kI * frame.b[node][d]) / std::sqrt(2.0);
    }
    const auto basis = tensor_power(m, section.rank());
    for (int c = 0; c < section.dim(); ++c) {
      section.at(node, c) = f.samples[node] * basis[static_cast<std::size_t>(c)];
    }
  }
  return section;
}

GridFunction extract(const EmbeddedSection& section) {
  const SphereGrid& grid = *section.grid;
  GridFunction f(section.grid, -section.helicity);
  for (int i = 0; i < grid.theta_count(); ++i) {
    for (int k = 0; k < grid.phi_count(); ++k) {
      const auto basis = helicity_basis(section.helicity, grid.theta(i), grid.phi(k));
      const std::size_t node = grid.index(i, k);
      cdouble acc{};
      for (int c = 0; c < section.dim(); ++c) {
        acc += std::conj(basis[static_cast<std::size_t>(c)]) * section.at(node, c);
      }
      f.samples[node] = acc;
    }
  }
  return f;
}

EmbeddedSection tensor_product(const EmbeddedSection& a, const EmbeddedSection& b) {
  if (std::abs(a.helicity) != 1 || a.helicity != b.helicity || !a.grid->same_layout(*b.grid)) {
    throw Error(ErrorCode::UnsupportedHelicity,
                "tensor_product needs two sections of equal helicity ±1 on one grid");
  }
  EmbeddedSection out(a.grid, 2 * a.helicity);
  for (std::size_t node = 0; node < a.grid->node_count(); ++node) {
    for (int b1 = 0; b1 < 3; ++b1) {
      for (int b2 = 0; b2 < 3; ++b2) out.at(node, 3 * b1 + b2) = a.at(node, b1) * b.at(node, b2);
    }
  }
  return out;
}

double norm(const EmbeddedSection& section) {
  const SphereGrid& grid = *section.grid;
  double total = 0.0;
  for (int i = 0; i < grid.theta_count(); ++i) {
    double ring = 0.0;
    for (int k = 0; k < grid.phi_count(); ++k) {
      const std::size_t node = grid.index(i, k);
      for (int c = 0; c < section.dim(); ++c) ring += std::norm(section.at(node, c));
    }
    total += grid.theta_weight(i) * ring;
  }
  return std::sqrt(total * grid.phi_weight());
}

double max_abs(const EmbeddedSection& section) {
  double worst = 0.0;
  for (const auto& v : section.components) worst = std::max(worst, std::abs(v));
  return worst;
}

double transversality_residual(const EmbeddedSection& section) {
  const SphereGrid& grid = *section.grid;
  double worst = 0.0;
  for (int i = 0; i < grid.theta_count(); ++i) {
    for (int k = 0; k < grid.phi_count(); ++k) {
      const Vec3 kh = grid.k_hat(i, k);
      const std::size_t node = grid.index(i, k);
      if (section.rank() == 1) {
        cdouble dot{};
        for (int b = 0; b < 3; ++b) dot += kh[b] * section.at(node, b);
        worst = std::max(worst, std::abs(dot));
        continue;
      }
      for (int other = 0; other < 3; ++other) {
        cdouble first{};
        cdouble second{};
        for (int b = 0; b < 3; ++b) {
          first += kh[b] * section.at(node, 3 * b + other);
          second += kh[b] * section.at(node, 3 * other + b);
        }
        worst = std::max({worst, std::abs(first), std::abs(second)});
      }
    }
  }
  return worst;
}

double fiber_residual(const EmbeddedSection& section) {
  const SphereGrid& grid = *section.grid;
  double worst = 0.0;
  for (int i = 0; i < grid.theta_count(); ++i) {
    for (int k = 0; k < grid.phi_count(); ++k) {
      const auto basis = helicity_basis(section.helicity, grid.theta(i), grid.phi(k));
      const std::size_t node = grid.index(i, k);
      cdouble coeff{};
      for (int c = 0; c < section.dim(); ++c) {
        coeff += std::conj(basis[static_cast<std::size_t>(c)]) * section.at(node, c);
      }
      double dist = 0.0;
      for (int c = 0; c < section.dim(); ++c) {
        dist += std::norm(section.at(node, c) - coeff * basis[static_cast<std::size_t>(c)]);
      }
      worst = std::max(worst, std::sqrt(dist));
    }
  }
  return worst;
}

EmbeddedSection apply_J_rotation(const EmbeddedSection& section, const Vec3& axis) {
  const double len = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (!(len > 0.0)) throw Error(ErrorCode::DomainError, "rotation axis must be nonzero");
  const Vec3 v{axis[0] / len, axis[1] / len, axis[2] / len};

  const CoefficientSet profile = analyze(extract(section));
  const SphereGrid& grid = *section.grid;
  const int rank = section.rank();
  const int dim = section.dim();

  constexpr std::array<double, 4> kOffsets = {-2.0, -1.0, 1.0, 2.0};
  constexpr std::array<double, 4> kStencil = {1.0, -8.0, 8.0, -1.0};
  const double step = kRotationStep;

  EmbeddedSection out(section.grid, section.helicity);
  for (std::size_t n = 0; n < kOffsets.size(); ++n) {
    const double psi = kOffsets[n] * step;
    const Mat3 forward = rotation(v, psi);
    const Mat3 backward = rotation(v, -psi);
    const double weight = kStencil[n] / (12.0 * step);
    for (int i = 0; i < grid.theta_count(); ++i) {
      for (int k = 0; k < grid.phi_count(); ++k) {
        const Vec3 moved = apply_real(backward, grid.k_hat(i, k));
        const double theta = std::acos(std::clamp(moved[2], -1.0, 1.0));
        const double phi = std::atan2(moved[1], moved[0]);
        const cdouble amplitude = evaluate(profile, theta, phi);
        std::vector<cdouble> value = helicity_basis(section.helicity, theta, phi);
        for (auto& x : value) x *= amplitude;
        apply_every_slot(forward, value, rank);
        const std::size_t node = grid.index(i, k);
        for (int c = 0; c < dim; ++c) {
          out.at(node, c) += kI * weight * value[static_cast<std::size_t>(c)];
        }
      }
    }
  }
  project_all(out);
  return out;
}

VectorOperatorResult apply_projected_spin(const EmbeddedSection& section) {
  const SphereGrid& grid = *section.grid;
  const int dim = section.dim();
  VectorOperatorResult result;
  for (int a = 0; a < 3; ++a) {
    EmbeddedSection out(section.grid, section.helicity);
    const Mat3 spin = spin_matrix(a);
    for (int i = 0; i < grid.theta_count(); ++i) {
      for (int k = 0; k < grid.phi_count(); ++k) {
        const Mat3 m = multiply(projector(grid.k_hat(i, k)), spin);
        const std::size_t node = grid.index(i, k);
        const auto in = std::span<const cdouble>(section.components).subspan(node * dim, dim);
        const auto dst = std::span<cdouble>(out.components).subspan(node * dim, dim);
        for (int slot = 0; slot < section.rank(); ++slot) {
          accumulate_slot(m, in, dst, section.rank(), slot);
        }
      }
    }
    project_all(out);
    result.axis[static_cast<std::size_t>(a)] = std::move(out);
  }
  return result;
}

VectorOperatorResult apply_projected_orbital(const EmbeddedSection& section) {
  const SphereGrid& grid = *section.grid;
  const int dim = section.dim();
  std::vector<SynthesizedPartials> partials;
  partials.reserve(static_cast<std::size_t>(dim));
  for (int c = 0; c < dim; ++c) {
    GridFunction component(section.grid, 0);
    for (std::size_t node = 0; node < grid.node_count(); ++node) {
      component.samples[node] = section.at(node, c);
    }
    partials.push_back(synthesize_partials(analyze(component), section.grid));
  }

  VectorOperatorResult result;
  for (int a = 0; a < 3; ++a) {
    EmbeddedSection out(section.grid, section.helicity);
    for (int i = 0; i < grid.theta_count(); ++i) {
      for (int k = 0; k < grid.phi_count(); ++k) {
        const double et = grid.e_theta(i, k)[static_cast<std::size_t>(a)];
        const double ep = grid.e_phi(i, k)[static_cast<std::size_t>(a)];
        const double st = grid.sin_theta(i);
        const std::size_t node = grid.index(i, k);
        for (int c = 0; c < dim; ++c) {
          const auto& p = partials[static_cast<std::size_t>(c)];
          out.at(node, c) = -kI * (ep * p.dtheta.samples[node] - et / st * p.dphi.samples[node]);
        }
      }
    }
    project_all(out);
    result.axis[static_cast<std::size_t>(a)] = std::move(out);
  }
  return result;
}

VectorOperatorResult frame_orbital_action(const GridPtr& grid, int h) {
  require_supported_helicity(h);
  const double sign = h > 0 ? 1.0 : -1.0;
  const int rank = std::abs(h);
  VectorOperatorResult result;
  for (auto& axis : result.axis) axis = EmbeddedSection(grid, h);
  for (int i = 0; i < grid->theta_count(); ++i) {
    for (int k = 0; k < grid->phi_count(); ++k) {
      const Vec3 et = grid->e_theta(i, k);
      const Vec3 ep = grid->e_phi(i, k);
      const Vec3 kh = grid->k_hat(i, k);
      const double ct = grid->cos_theta(i);
      const double st = grid->sin_theta(i);
      // ∂θ ê_θ = -k̂, ∂θ ê_φ = 0, ∂φ ê_θ = cos θ ê_φ, ∂φ ê_φ = -(sin θ k̂ + cos θ ê_θ)
      std::array<cdouble, 3> e{};
      std::array<cdouble, 3> de_theta{};
      std::array<cdouble, 3> de_phi{};
      for (int d = 0; d < 3; ++d) {
        e[d] = (et[d] + sign * kI * ep[d]) / std::sqrt(2.0);
        de_theta[d] = -kh[d] / std::sqrt(2.0);
        de_phi[d] = (ct * ep[d] - sign * kI * (st * kh[d] + ct * et[d])) / std::sqrt(2.0);
      }
      const auto dtheta = tensor_power_derivative(e, de_theta, rank);
      const auto dphi = tensor_power_derivative(e, de_phi, rank);
      const std::size_t node = grid->index(i, k);
      for (int a = 0; a < 3; ++a) {
        auto& out = result.axis[static_cast<std::size_t>(a)];
        for (int c = 0; c < out.dim(); ++c) {
          out.at(node, c) = -kI * (ep[a] * dtheta[static_cast<std::size_t>(c)] -
                                   et[a] / st * dphi[static_cast<std::size_t>(c)]);
        }
      }
    }
  }
  for (auto& axis : result.axis) project_all(axis);
  return result;
}

namespace {

// Quadrature norm with a floor so a zero section reports zero residuals.
double reference_norm(const EmbeddedSection& s) {
  const double n = norm(s);
  return n > 0.0 ? n : 1.0;
}

}  // namespace

CommutatorReport commutator_report(int h, std::span<const EmbeddedSection> sections) {
  require_supported_helicity(h);
  CommutatorReport report;
  report.helicity = h;
  report.sections = sections.size();

  for (std::size_t idx = 0; idx < sections.size(); ++idx) {
    const EmbeddedSection& alpha = sections[idx];
    if (alpha.helicity != h) {
      throw Error(ErrorCode::UnsupportedHelicity, "test section has the wrong helicity");
    }
    const double scale = reference_norm(alpha);

    const VectorOperatorResult par = apply_projected_spin(alpha);
    const VectorOperatorResult perp = apply_projected_orbital(alpha);
    // [first][b] = X_first(Y_b α) for the four combinations of X, Y.
    std::array<VectorOperatorResult, 3> par_of_par;
    std::array<VectorOperatorResult, 3> perp_of_par;
    std::array<VectorOperatorResult, 3> par_of_perp;
    std::array<VectorOperatorResult, 3> perp_of_perp;
    for (std::size_t b = 0; b < 3; ++b) {
      par_of_par[b] = apply_projected_spin(par.axis[b]);
      perp_of_par[b] = apply_projected_orbital(par.axis[b]);
      par_of_perp[b] = apply_projected_spin(perp.axis[b]);
      perp_of_perp[b] = apply_projected_orbital(perp.axis[b]);
    }

    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = 0; b < 3; ++b) {
        // X_a Y_b α is (X of (Y_b α)).axis[a].
        const EmbeddedSection pp = par_of_par[b].axis[a] - par_of_par[a].axis[b];
        const EmbeddedSection xp = perp_of_par[b].axis[a] - par_of_perp[a].axis[b];
        const EmbeddedSection xx = perp_of_perp[b].axis[a] - perp_of_perp[a].axis[b];

        EmbeddedSection expected_xp(alpha.grid, h);
        EmbeddedSection expected_xx(alpha.grid, h);
        EmbeddedSection so3_par(alpha.grid, h);
        EmbeddedSection so3_perp(alpha.grid, h);
        for (std::size_t c = 0; c < 3; ++c) {
          const double eps = levi_civita(static_cast<int>(a), static_cast<int>(b),
                                         static_cast<int>(c));
          if (eps == 0.0) continue;
          expected_xp += (kI * eps) * par.axis[c];
          expected_xx += (kI * eps) * (perp.axis[c] - par.axis[c]);
          so3_par += (kI * eps) * par.axis[c];
          so3_perp += (kI * eps) * perp.axis[c];
        }
        report.parallel_parallel = std::max(report.parallel_parallel, max_abs(pp) / scale);
        report.perp_parallel = std::max(report.perp_parallel, max_abs(xp - expected_xp) / scale);
        report.perp_perp = std::max(report.perp_perp, max_abs(xx - expected_xx) / scale);

        const double par_defect = norm(pp - so3_par) / scale;
        if (par_defect > report.parallel_so3_defect) {
          report.parallel_so3_defect = par_defect;
          report.parallel_witness = idx;
        }
        const double perp_defect = norm(xx - so3_perp) / scale;
        if (perp_defect > report.perp_so3_defect) {
          report.perp_so3_defect = perp_defect;
          report.perp_witness = idx;
        }
      }
    }
  }
  return report;
}

}  // namespace swsh
