#pragma once

// Angular momentum of helicity-h states written in the ê_h frame, where the
// wavefunction is a spin-weight s = -h function. Two realizations:
//
//   apply_coeff  exact action on a_jm (multiplet algebra)
//   apply_grid   the differential operators
//                  J'_z = -i ∂φ
//                  J'_± = e^{±iφ}(±∂θ + i cot θ ∂φ + h / sin θ)
//                  J'²  = -∇² - (2h cos θ / sin²θ) L_z + h² / sin²θ
//                evaluated with analytic θ-derivatives.
//
// h is always taken from the operand's spin weight, never passed separately.

#include "swsh/transform.hpp"

namespace swsh {

enum class OperatorKind { Jz, Jplus, Jminus, Jsquared, Helicity };

struct OperatorSpec {
  OperatorKind kind = OperatorKind::Jz;
  int spin_weight = 0;

  int helicity() const noexcept { return -spin_weight; }
};

/// √((j ∓ m)(j + 1 ± m)) for J±; sign = +1 for J+, -1 for J-.
double ladder_coefficient(int j, int m, int sign);

CoefficientSet apply_coeff(const OperatorSpec& op, const CoefficientSet& c);

/// Grid action of the differential operator on a band-limited f.
GridFunction apply_grid(const OperatorSpec& op, const GridFunction& f);

/// Grid action on a single sampled mode, via eval_swsh_dtheta directly.
GridFunction apply_grid_mode(OperatorSpec op, const GridPtr& grid, const SWMode& mode);

/// max |J² c - (J₋J₊ + J_z² + J_z) c| over entries.
double verify_casimir_identity(int s, const CoefficientSet& c);

}  // namespace swsh
