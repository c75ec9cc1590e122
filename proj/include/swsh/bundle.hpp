#pragma once

// Sections of the helicity bundles γ_h (|h| = 1, 2) embedded in ℂ³ or
// ℂ³⊗ℂ³, and the vector operators acting on them:
//
//   J    rotation generator, i d/dψ R^ψ α(R^{-ψ} k) at ψ = 0
//   P∘S  projected spin, (S_a)_{bc} = -i ε_{abc}, summed over tensor slots
//   P∘L  projected orbital, L = -i (ê_φ ∂θ - ê_θ (1/sin θ) ∂φ) per component
//
// P removes k̂ components slot by slot (I - k̂k̂ᵀ on each factor).

#include <array>
#include <span>
#include <vector>

#include "swsh/grid.hpp"
#include "swsh/transform.hpp"

namespace swsh {

/// Tensor components per node, node-major: components[node * dim() + c].
/// For |h| = 2 the component index is 3 * b1 + b2.
struct EmbeddedSection {
  GridPtr grid;
  int helicity = 1;
  std::vector<cdouble> components;

  EmbeddedSection() = default;
  EmbeddedSection(GridPtr g, int h);

  int rank() const noexcept;
  int dim() const noexcept { return rank() == 1 ? 3 : 9; }
  cdouble& at(std::size_t node, int c) { return components[node * dim() + c]; }
  const cdouble& at(std::size_t node, int c) const { return components[node * dim() + c]; }

  EmbeddedSection& operator+=(const EmbeddedSection& other);
  EmbeddedSection& operator-=(const EmbeddedSection& other);
  EmbeddedSection& operator*=(cdouble scale);
};

EmbeddedSection operator+(EmbeddedSection a, const EmbeddedSection& b);
EmbeddedSection operator-(EmbeddedSection a, const EmbeddedSection& b);
EmbeddedSection operator*(cdouble scale, EmbeddedSection a);

/// x, y, z components of a vector operator applied to a section.
struct VectorOperatorResult {
  std::array<EmbeddedSection, 3> axis;

  EmbeddedSection along(const Vec3& v) const;
};

/// Throws UnsupportedHelicity unless |h| is 1 or 2.
void require_supported_helicity(int h);

/// ê_h = 2^{-|h|/2} (ê_θ ± i ê_φ)^{⊗|h|} at (θ, φ), sign of h selects ±.
std::vector<cdouble> helicity_basis(int h, double theta, double phi);

/// f ê_h with h = -f.spin_weight, built in f's own frame.
EmbeddedSection embed(const GridFunction& f);

/// Component along ê_h in the spherical frame; inverse of embed.
GridFunction extract(const EmbeddedSection& section);

/// α₁ ⊗ α₂ for two helicity ±1 sections of the same sign.
EmbeddedSection tensor_product(const EmbeddedSection& a, const EmbeddedSection& b);

/// Quadrature L² norm.
double norm(const EmbeddedSection& section);
double max_abs(const EmbeddedSection& section);

/// Largest |k̂ contracted into any slot| over nodes.
double transversality_residual(const EmbeddedSection& section);

/// Largest distance of a node's tensor from span{ê_h}.
double fiber_residual(const EmbeddedSection& section);

inline constexpr double kRotationStep = 1e-4;

/// i d/dψ R^ψ α(R^{-ψ} k) by a 4th-order central difference with step
/// kRotationStep. The section is resampled at rotated points through its
/// spin-weighted expansion, so it must be band-limited to the grid.
EmbeddedSection apply_J_rotation(const EmbeddedSection& section, const Vec3& axis);

/// J_∥ realized as P∘S. Pointwise.
VectorOperatorResult apply_projected_spin(const EmbeddedSection& section);

/// J_⊥ realized as P∘L, differentiating each ambient component through a
/// spin-0 transform. Components must be band-limited to the grid, which
/// holds when the scalar profile has band limit <= L - |h|.
VectorOperatorResult apply_projected_orbital(const EmbeddedSection& section);

/// P∘L applied to the frame section ê_h itself using the analytic
/// derivatives of (ê_θ, ê_φ). ê_h is not band-limited, so this cannot go
/// through apply_projected_orbital.
VectorOperatorResult frame_orbital_action(const GridPtr& grid, int h);

struct CommutatorReport {
  int helicity = 0;
  std::size_t sections = 0;
  // [J∥a, J∥b] = 0
  double parallel_parallel = 0.0;
  // [J⊥a, J∥b] = iε J∥c
  double perp_parallel = 0.0;
  // [J⊥a, J⊥b] = iε (J⊥c - J∥c)
  double perp_perp = 0.0;
  // ||[J∥a, J∥b] α - iε J∥c α|| / ||α||, maximized over sections and pairs
  double parallel_so3_defect = 0.0;
  std::size_t parallel_witness = 0;
  // ||[J⊥a, J⊥b] α - iε J⊥c α|| / ||α||
  double perp_so3_defect = 0.0;
  std::size_t perp_witness = 0;
};

/// Residuals are max pointwise component errors divided by ||α||. Sections
/// must leave two bands of headroom: profile band limit <= L - |h| - 2.
CommutatorReport commutator_report(int h, std::span<const EmbeddedSection> sections);

}  // namespace swsh
