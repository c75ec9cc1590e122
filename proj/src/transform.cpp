#include "swsh/transform.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace swsh {

CoefficientSet::CoefficientSet(int spin_weight, int band_limit)
    : spin_weight_(spin_weight), band_limit_(band_limit) {
  if (band_limit < 0) throw Error(ErrorCode::DomainError, "band limit must be nonnegative");
}

cdouble CoefficientSet::get(int j, int m) const {
  const auto it = entries_.find({j, m});
  return it == entries_.end() ? cdouble{} : it->second;
}

void CoefficientSet::set(int j, int m, cdouble value) {
  require_valid({spin_weight_, j, m});
  if (j > band_limit_) {
    throw Error(ErrorCode::BandLimitExceeded, "coefficient j=" + std::to_string(j) +
                                                  " exceeds band limit " +
                                                  std::to_string(band_limit_));
  }
  if (std::abs(value) < kCoefficientZero) {
    entries_.erase({j, m});
  } else {
    entries_[{j, m}] = value;
  }
}

void CoefficientSet::add(int j, int m, cdouble value) { set(j, m, get(j, m) + value); }

double CoefficientSet::norm_squared() const {
  double total = 0.0;
  for (const auto& [key, v] : entries_) total += std::norm(v);
  return total;
}

double max_abs_difference(const CoefficientSet& a, const CoefficientSet& b) {
  double worst = 0.0;
  for (const auto& [key, v] : a.entries()) {
    worst = std::max(worst, std::abs(v - b.get(key.first, key.second)));
  }
  for (const auto& [key, v] : b.entries()) {
    worst = std::max(worst, std::abs(v - a.get(key.first, key.second)));
  }
  return worst;
}

CoefficientSet operator+(const CoefficientSet& a, const CoefficientSet& b) {
  if (a.spin_weight() != b.spin_weight()) {
    throw Error(ErrorCode::SpinWeightMismatch, "adding coefficient sets of different spin weight");
  }
  CoefficientSet out(a.spin_weight(), std::max(a.band_limit(), b.band_limit()));
  for (const auto& [key, v] : a.entries()) out.add(key.first, key.second, v);
  for (const auto& [key, v] : b.entries()) out.add(key.first, key.second, v);
  return out;
}

CoefficientSet operator*(cdouble scale, const CoefficientSet& c) {
  CoefficientSet out(c.spin_weight(), c.band_limit());
  for (const auto& [key, v] : c.entries()) out.set(key.first, key.second, scale * v);
  return out;
}

namespace {

// (2π/N) Σ_k f(θ_i, φ_k) e^{-imφ_k} for every ring i and |m| <= L.
// Indexed [m + L][i].
std::vector<std::vector<cdouble>> phi_projections(const GridFunction& f, int band_limit) {
  const SphereGrid& grid = *f.grid;
  std::vector<std::vector<cdouble>> out(static_cast<std::size_t>(2 * band_limit + 1),
                                        std::vector<cdouble>(static_cast<std::size_t>(
                                            grid.theta_count())));
  for (int m = -band_limit; m <= band_limit; ++m) {
    std::vector<cdouble> twiddle(static_cast<std::size_t>(grid.phi_count()));
    for (int k = 0; k < grid.phi_count(); ++k) {
      twiddle[static_cast<std::size_t>(k)] = std::polar(1.0, -m * grid.phi(k));
    }
    for (int i = 0; i < grid.theta_count(); ++i) {
      cdouble acc{};
      for (int k = 0; k < grid.phi_count(); ++k) {
        acc += f.at(i, k) * twiddle[static_cast<std::size_t>(k)];
      }
      out[static_cast<std::size_t>(m + band_limit)][static_cast<std::size_t>(i)] =
          acc * grid.phi_weight();
    }
  }
  return out;
}

void require_fits(const CoefficientSet& c, const SphereGrid& grid) {
  if (c.band_limit() > grid.band_limit()) {
    throw Error(ErrorCode::BandLimitExceeded,
                "coefficient band limit " + std::to_string(c.band_limit()) +
                    " exceeds grid band limit " + std::to_string(grid.band_limit()));
  }
}

// Σ_j a_jm d^order/dθ^order profile_jm(θ_i), indexed [m + L][i].
struct RingSums {
  std::vector<std::vector<cdouble>> by_m;
};

RingSums ring_sums(const CoefficientSet& c, const SphereGrid& grid, int order) {
  const int band = grid.band_limit();
  RingSums sums{std::vector<std::vector<cdouble>>(
      static_cast<std::size_t>(2 * band + 1),
      std::vector<cdouble>(static_cast<std::size_t>(grid.theta_count())))};
  // entries() iterates in ascending (j, m).
  for (const auto& [key, a] : c.entries()) {
    const auto [j, m] = key;
    const SWMode mode{c.spin_weight(), j, m};
    auto& row = sums.by_m[static_cast<std::size_t>(m + band)];
    for (int i = 0; i < grid.theta_count(); ++i) {
      row[static_cast<std::size_t>(i)] += a * swsh_profile(mode, grid.theta(i), order);
    }
  }
  return sums;
}

// Σ_m (im)^phi_order ring_m(θ_i) e^{imφ_k}.
GridFunction sum_over_m(const RingSums& sums, const GridPtr& grid, int s, int phi_order) {
  const int band = grid->band_limit();
  GridFunction f(grid, s);
  for (int i = 0; i < grid->theta_count(); ++i) {
    for (int k = 0; k < grid->phi_count(); ++k) {
      cdouble acc{};
      for (int m = -band; m <= band; ++m) {
        cdouble term = sums.by_m[static_cast<std::size_t>(m + band)][static_cast<std::size_t>(i)] *
                       std::polar(1.0, m * grid->phi(k));
        for (int p = 0; p < phi_order; ++p) term *= cdouble(0.0, m);
        acc += term;
      }
      f.at(i, k) = acc;
    }
  }
  return f;
}

}  // namespace

CoefficientSet analyze(const GridFunction& f) {
  const SphereGrid& grid = *f.grid;
  const int band = grid.band_limit();
  const int s = f.spin_weight;
  CoefficientSet c(s, band);
  if (std::abs(s) > band) return c;
  const auto proj = phi_projections(f, band);
  for (int j = std::abs(s); j <= band; ++j) {
    for (int m = -j; m <= j; ++m) {
      const SWMode mode{s, j, m};
      const auto& row = proj[static_cast<std::size_t>(m + band)];
      cdouble acc{};
      for (int i = 0; i < grid.theta_count(); ++i) {
        acc += grid.theta_weight(i) * swsh_profile(mode, grid.theta(i), 0) *
               row[static_cast<std::size_t>(i)];
      }
      c.set(j, m, acc);
    }
  }
  return c;
}

GridFunction synthesize(const CoefficientSet& c, const GridPtr& grid) {
  require_fits(c, *grid);
  return sum_over_m(ring_sums(c, *grid, 0), grid, c.spin_weight(), 0);
}

SynthesizedPartials synthesize_partials(const CoefficientSet& c, const GridPtr& grid) {
  require_fits(c, *grid);
  const RingSums r0 = ring_sums(c, *grid, 0);
  const RingSums r1 = ring_sums(c, *grid, 1);
  const RingSums r2 = ring_sums(c, *grid, 2);
  const int s = c.spin_weight();
  return {sum_over_m(r0, grid, s, 0), sum_over_m(r1, grid, s, 0), sum_over_m(r2, grid, s, 0),
          sum_over_m(r0, grid, s, 1), sum_over_m(r0, grid, s, 2)};
}

cdouble evaluate(const CoefficientSet& c, double theta, double phi) {
  cdouble acc{};
  for (const auto& [key, a] : c.entries()) {
    acc += a * eval_swsh({c.spin_weight(), key.first, key.second}, theta, phi);
  }
  return acc;
}

int independent_mode_count(const GridPtr& grid, int s, int j) {
  if (j < std::abs(s) || j > grid->band_limit()) return 0;
  // Rows: analyzed coefficient vectors over all (j', m') slots.
  std::vector<std::vector<cdouble>> rows;
  const int band = grid->band_limit();
  for (int m = -j; m <= j; ++m) {
    const CoefficientSet c = analyze(sample_swsh(grid, {s, j, m}));
    std::vector<cdouble> row;
    for (int jj = std::abs(s); jj <= band; ++jj) {
      for (int mm = -jj; mm <= jj; ++mm) row.push_back(c.get(jj, mm));
    }
    rows.push_back(std::move(row));
  }
  // Gaussian elimination with partial pivoting.
  int rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t col = 0; col < cols && rank < static_cast<int>(rows.size()); ++col) {
    std::size_t pivot = static_cast<std::size_t>(rank);
    for (std::size_t r = pivot + 1; r < rows.size(); ++r) {
      if (std::abs(rows[r][col]) > std::abs(rows[pivot][col])) pivot = r;
    }
    if (std::abs(rows[pivot][col]) < 1e-8) continue;
    std::swap(rows[pivot], rows[static_cast<std::size_t>(rank)]);
    const auto& p = rows[static_cast<std::size_t>(rank)];
    for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < rows.size(); ++r) {
      const cdouble factor = rows[r][col] / p[col];
      for (std::size_t k = col; k < cols; ++k) rows[r][k] -= factor * p[k];
    }
    ++rank;
  }
  return rank;
}

void write_coefficients_json(std::ostream& out, const CoefficientSet& c) {
  nlohmann::ordered_json doc;
  doc["spin_weight"] = c.spin_weight();
  doc["band_limit"] = c.band_limit();
  doc["entries"] = nlohmann::ordered_json::array();
  for (const auto& [key, v] : c.entries()) {
    nlohmann::ordered_json e;
    e["j"] = key.first;
    e["m"] = key.second;
    e["re"] = v.real();
    e["im"] = v.imag();
    doc["entries"].push_back(std::move(e));
  }
  out << doc.dump() << '\n';
}

CoefficientSet read_coefficients_json(std::istream& in) {
  try {
    const auto doc = nlohmann::json::parse(in);
    CoefficientSet c(doc.at("spin_weight").get<int>(), doc.at("band_limit").get<int>());
    for (const auto& e : doc.at("entries")) {
      c.add(e.at("j").get<int>(), e.at("m").get<int>(),
            {e.at("re").get<double>(), e.at("im").get<double>()});
    }
    return c;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::ParseError, std::string("coefficient JSON: ") + ex.what());
  }
}

}  // namespace swsh
