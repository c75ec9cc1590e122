#pragma once

// Gauss–Legendre × equiangular grids on S², spin-weighted samples on them,
// tangent frame fields and the spin-weight gauge law.

#include <array>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "swsh/core.hpp"

namespace swsh {

using Vec3 = std::array<double, 3>;

/// Product grid: Gauss–Legendre nodes in cos θ (θ ascending, never at a
/// pole) times equispaced φ_k = 2πk/N. Immutable once built.
class SphereGrid {
 public:
  SphereGrid(int band_limit, int theta_count, int phi_count);

  int band_limit() const noexcept { return band_limit_; }
  int theta_count() const noexcept { return static_cast<int>(cos_theta_.size()); }
  int phi_count() const noexcept { return phi_count_; }
  std::size_t node_count() const noexcept {
    return static_cast<std::size_t>(theta_count()) * static_cast<std::size_t>(phi_count_);
  }
  std::size_t index(int i, int k) const noexcept {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(phi_count_) +
           static_cast<std::size_t>(k);
  }

  double cos_theta(int i) const { return cos_theta_[static_cast<std::size_t>(i)]; }
  double theta(int i) const { return theta_[static_cast<std::size_t>(i)]; }
  double sin_theta(int i) const { return sin_theta_[static_cast<std::size_t>(i)]; }
  /// Gauss–Legendre weight in d(cos θ); these sum to 2.
  double theta_weight(int i) const { return weights_[static_cast<std::size_t>(i)]; }
  double phi(int k) const;
  double phi_weight() const noexcept;

  /// Unit radial vector k̂ at node (i, k).
  Vec3 k_hat(int i, int k) const;
  Vec3 e_theta(int i, int k) const;
  Vec3 e_phi(int i, int k) const;

  bool same_layout(const SphereGrid& other) const noexcept;

 private:
  int band_limit_;
  int phi_count_;
  std::vector<double> cos_theta_;
  std::vector<double> theta_;
  std::vector<double> sin_theta_;
  std::vector<double> weights_;
};

using GridPtr = std::shared_ptr<const SphereGrid>;

/// L+1 Gauss–Legendre rings and 2L+1 φ samples: exact for every product
/// sY_jm* sY_j'm' with j, j' <= L.
GridPtr make_grid(int band_limit);

/// Gauss–Legendre nodes (ascending) and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Complex samples of a spin-weight s function, row-major with θ outer.
/// frame_angle holds the accumulated frame rotation ξ per node relative to
/// (ê_θ, ê_φ); empty means the standard spherical frame.
struct GridFunction {
  GridPtr grid;
  int spin_weight = 0;
  std::vector<cdouble> samples;
  std::vector<double> frame_angle;

  GridFunction() = default;
  GridFunction(GridPtr g, int s);
  GridFunction(GridPtr g, int s, std::vector<cdouble> values);

  bool spherical_frame() const noexcept { return frame_angle.empty(); }
  cdouble& at(int i, int k) { return samples[grid->index(i, k)]; }
  const cdouble& at(int i, int k) const { return samples[grid->index(i, k)]; }
};

/// Orthonormal (a, b, k̂) at every node. a = cos ξ ê_θ - sin ξ ê_φ,
/// b = sin ξ ê_θ + cos ξ ê_φ, so m₊ = (a + i b)/√2 = e^{iξ} ê₊.
struct FrameField {
  std::vector<Vec3> a;
  std::vector<Vec3> b;
  std::vector<Vec3> k_hat;
};

FrameField make_frame_field(const SphereGrid& grid, std::span<const double> xi = {});

/// sY_jm sampled at every node. Throws BandLimitExceeded if j > L.
GridFunction sample_swsh(const GridPtr& grid, const SWMode& mode);

/// Σ w conj(fa) fb ≈ ∫ conj(fa) fb dΩ.
cdouble inner_product(const GridFunction& fa, const GridFunction& fb);

double norm(const GridFunction& f);

/// Frame rotation by ξ: samples pick up e^{isξ} and the frame tag records ξ.
GridFunction apply_gauge(const GridFunction& f, std::span<const double> xi);

struct PoleEstimate {
  cdouble value;    // c_N or c_S
  double residual;  // max of the spread over φ and the near-pole fit misfit
};

/// Extrapolates f e^{∓ihφ} to the pole. f is resampled spectrally on three
/// rings at θ₀, θ₀/2, θ₀/4 from the pole and a quadratic in θ is
/// extrapolated to θ = 0 per φ. The residual also includes how far the
/// expansion misses f on the three grid rings nearest the pole, so a
/// sampled function that is not a smooth section is flagged rather than
/// silently smoothed. Needs at least three θ rings on the grid.
PoleEstimate pole_limit_extrapolate(const GridFunction& f, Pole pole, int h);

inline constexpr double kPoleRingOffset = 1.0e-3;

void write_grid_csv(std::ostream& out, const GridFunction& f);
GridFunction read_grid_csv(std::istream& in);

/// %.17g with a trailing ".0" for integral values.
std::string format_double(double x);

}  // namespace swsh
