#include "swsh/angmom.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace swsh {

double ladder_coefficient(int j, int m, int sign) {
  const double product = static_cast<double>(j - sign * m) * static_cast<double>(j + 1 + sign * m);
  return product > 0.0 ? std::sqrt(product) : 0.0;
}

CoefficientSet apply_coeff(const OperatorSpec& op, const CoefficientSet& c) {
  if (op.spin_weight != c.spin_weight()) {
    throw Error(ErrorCode::SpinWeightMismatch,
                "operator spin weight " + std::to_string(op.spin_weight) +
                    " applied to coefficients of spin weight " + std::to_string(c.spin_weight()));
  }
  CoefficientSet out(c.spin_weight(), c.band_limit());
  for (const auto& [key, a] : c.entries()) {
    const auto [j, m] = key;
    switch (op.kind) {
      case OperatorKind::Jz:
        out.add(j, m, static_cast<double>(m) * a);
        break;
      case OperatorKind::Jplus:
        if (m < j) out.add(j, m + 1, ladder_coefficient(j, m, +1) * a);
        break;
      case OperatorKind::Jminus:
        if (m > -j) out.add(j, m - 1, ladder_coefficient(j, m, -1) * a);
        break;
      case OperatorKind::Jsquared:
        out.add(j, m, static_cast<double>(j) * (j + 1) * a);
        break;
      case OperatorKind::Helicity:
        out.add(j, m, static_cast<double>(op.helicity()) * a);
        break;
    }
  }
  return out;
}

namespace {

struct LocalJet {
  cdouble f;
  cdouble dtheta;
  cdouble dtheta2;
  cdouble dphi;
  cdouble dphi2;
};

cdouble apply_at_node(OperatorKind kind, int h, double theta, double phi, const LocalJet& jet) {
  const double st = std::sin(theta);
  const double ct = std::cos(theta);
  const cdouble i_unit(0.0, 1.0);
  switch (kind) {
    case OperatorKind::Jz:
      return -i_unit * jet.dphi;
    case OperatorKind::Jplus:
    case OperatorKind::Jminus: {
      const double sign = kind == OperatorKind::Jplus ? 1.0 : -1.0;
      return std::polar(1.0, sign * phi) *
             (sign * jet.dtheta + i_unit * (ct / st) * jet.dphi + (h / st) * jet.f);
    }
    case OperatorKind::Jsquared: {
      const cdouble laplacian = jet.dtheta2 + (ct / st) * jet.dtheta + jet.dphi2 / (st * st);
      const cdouble lz = -i_unit * jet.dphi;
      return -laplacian - (2.0 * h * ct / (st * st)) * lz +
             (static_cast<double>(h) * h / (st * st)) * jet.f;
    }
    case OperatorKind::Helicity:
      return static_cast<double>(h) * jet.f;
  }
  return {};
}

void require_matching_spin(const OperatorSpec& op, int spin_weight) {
  if (op.spin_weight != spin_weight) {
    throw Error(ErrorCode::SpinWeightMismatch,
                "operator spin weight " + std::to_string(op.spin_weight) +
                    " applied to a function of spin weight " + std::to_string(spin_weight));
  }
}

}  // namespace

GridFunction apply_grid(const OperatorSpec& op, const GridFunction& f) {
  require_matching_spin(op, f.spin_weight);
  if (std::abs(f.spin_weight) > f.grid->band_limit()) {
    throw Error(ErrorCode::BandLimitExceeded, "grid band limit is below |s|");
  }
  const SynthesizedPartials p = synthesize_partials(analyze(f), f.grid);
  const SphereGrid& grid = *f.grid;
  GridFunction out(f.grid, f.spin_weight);
  for (int i = 0; i < grid.theta_count(); ++i) {
    for (int k = 0; k < grid.phi_count(); ++k) {
      const LocalJet jet{p.value.at(i, k), p.dtheta.at(i, k), p.dtheta2.at(i, k),
                         p.dphi.at(i, k), p.dphi2.at(i, k)};
      out.at(i, k) = apply_at_node(op.kind, op.helicity(), grid.theta(i), grid.phi(k), jet);
    }
  }
  return out;
}

GridFunction apply_grid_mode(OperatorSpec op, const GridPtr& grid, const SWMode& mode) {
  require_valid(mode);
  require_matching_spin(op, mode.s);
  if (mode.j > grid->band_limit()) {
    throw Error(ErrorCode::BandLimitExceeded, "mode exceeds grid band limit");
  }
  GridFunction out(grid, mode.s);
  const cdouble im(0.0, mode.m);
  for (int i = 0; i < grid->theta_count(); ++i) {
    const double theta = grid->theta(i);
    const double g0 = swsh_profile(mode, theta, 0);
    const double g1 = swsh_profile(mode, theta, 1);
    const double g2 = swsh_profile(mode, theta, 2);
    for (int k = 0; k < grid->phi_count(); ++k) {
      const cdouble phase = std::polar(1.0, mode.m * grid->phi(k));
      const LocalJet jet{g0 * phase, g1 * phase, g2 * phase, im * g0 * phase,
                         im * im * g0 * phase};
      out.at(i, k) = apply_at_node(op.kind, op.helicity(), theta, grid->phi(k), jet);
    }
  }
  return out;
}

double verify_casimir_identity(int s, const CoefficientSet& c) {
  const CoefficientSet j2 = apply_coeff({OperatorKind::Jsquared, s}, c);
  const CoefficientSet jz = apply_coeff({OperatorKind::Jz, s}, c);
  const CoefficientSet jz2 = apply_coeff({OperatorKind::Jz, s}, jz);
  const CoefficientSet jmjp =
      apply_coeff({OperatorKind::Jminus, s}, apply_coeff({OperatorKind::Jplus, s}, c));
  return max_abs_difference(j2, jmjp + jz2 + jz);
}

}  // namespace swsh
