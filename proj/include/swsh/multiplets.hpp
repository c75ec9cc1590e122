#pragma once

// Integer bookkeeping of SO(3) multiplet structure: V_a ⊗ V_b, massless and
// massive spectra, and the search for orbital towers O with V_a ⊗ O equal
// to a target spectrum.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

namespace swsh {

/// j ↦ number of copies of V_j. Exact for j <= j_max. A complete spectrum
/// is known to vanish above j_max as well (finite direct sums).
struct MultipletSpectrum {
  std::map<int, std::int64_t> multiplicities;
  int j_max = 0;
  bool complete = false;

  std::int64_t count(int j) const;
  /// Σ (2j+1) count over j <= j_max.
  std::int64_t dimension() const;
  /// Drops zero counts and anything above j_max.
  void normalize();

  friend bool operator==(const MultipletSpectrum&, const MultipletSpectrum&) = default;
};

/// V_a ⊗ V_b = V_{|a-b|} ⊕ ... ⊕ V_{a+b}. Throws NegativeSpin.
MultipletSpectrum tensor_decompose(int a, int b);

/// Bilinear extension of tensor_decompose. The result's j_max is the
/// largest j that no unknown (above-cutoff) multiplet of a truncated
/// factor can reach; -1 when nothing is sound.
MultipletSpectrum spectrum_tensor(const MultipletSpectrum& a, const MultipletSpectrum& b);

/// One V_j for every |h| <= j <= j_max.
MultipletSpectrum massless_spectrum(int h, int j_max);

/// (2j+1) V_j for j < s and (2s+1) V_j for j >= s, up to j_max.
MultipletSpectrum massive_spectrum(int s, int j_max);

/// A single V_a as a complete spectrum.
MultipletSpectrum single_multiplet(int a);

struct FactorSearchOptions {
  int max_multiplicity = 3;
  int branch_limit = 64;
};

/// Every orbital spectrum O on [0, l_max] (multiplicities in
/// [0, max_multiplicity]) with V_a ⊗ O matching target for all
/// j <= min(target.j_max, l_max - a). Multiplicities O(l) with l >= a are
/// forced by peeling j = l - a upward; O(l) for l < a are branched on.
/// O(l) for l < a - window cannot affect the window and is reported as 0.
/// Throws SearchBudgetExceeded if more than branch_limit branches open.
std::vector<MultipletSpectrum> factor_search(const MultipletSpectrum& target, int a, int l_max,
                                             const FactorSearchOptions& options = {});

void write_spectrum_json(std::ostream& out, const MultipletSpectrum& s);
MultipletSpectrum read_spectrum_json(std::istream& in);

}  // namespace swsh
