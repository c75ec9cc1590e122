#include "swsh/verify.hpp"

#include <algorithm>
#include <cmath>

#include "swsh/angmom.hpp"
#include "swsh/bundle.hpp"
#include "swsh/multiplets.hpp"
#include "swsh/random.hpp"
#include "swsh/transform.hpp"

namespace swsh {

using json = nlohmann::ordered_json;

json RunReport::to_json() const {
  json doc;
  doc["command"] = command;
  doc["parameters"] = parameters;
  doc["results"] = results;
  doc["max_residual"] = max_residual ? json(*max_residual) : json(nullptr);
  doc["tolerance"] = tolerance ? json(*tolerance) : json(nullptr);
  doc["pass"] = pass;
  return doc;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"ortho",       "ladder", "casimir",
                                                 "lemma",       "commutators",
                                                 "pointop",     "poles",
                                                 "spectrum-match"};
  return names;
}

bool is_known_suite(std::string_view name) {
  const auto& names = suite_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

namespace {

std::vector<int> spins_or_default(const VerifyOptions& o) {
  if (o.spin_weight) return {*o.spin_weight};
  return {-2, -1, 0, 1, 2};
}

std::vector<int> helicities_or_default(const VerifyOptions& o) {
  if (o.spin_weight) return {-*o.spin_weight};
  return {1, 2};
}

double max_abs_difference(const GridFunction& a, const GridFunction& b) {
  double worst = 0.0;
  for (std::size_t n = 0; n < a.samples.size(); ++n) {
    worst = std::max(worst, std::abs(a.samples[n] - b.samples[n]));
  }
  return worst;
}

GridFunction scaled(const GridFunction& f, cdouble factor) {
  GridFunction out = f;
  for (auto& v : out.samples) v *= factor;
  return out;
}

void finish(RunReport& report, double residual, double tolerance) {
  report.max_residual = residual;
  report.tolerance = tolerance;
  report.pass = residual <= tolerance;
}

RunReport suite_ortho(const VerifyOptions& o) {
  RunReport report;
  report.command = "verify ortho";
  const int band = o.band_limit.value_or(16);
  const double tol = o.tolerance.value_or(1e-11);
  report.parameters["L"] = band;
  const GridPtr grid = make_grid(band);
  double worst = 0.0;
  for (const int s : spins_or_default(o)) {
    std::vector<GridFunction> modes;
    std::vector<SWMode> labels;
    for (int j = std::abs(s); j <= band; ++j) {
      for (int m = -j; m <= j; ++m) {
        labels.push_back({s, j, m});
        modes.push_back(sample_swsh(grid, labels.back()));
      }
    }
    double spin_worst = 0.0;
    for (std::size_t a = 0; a < modes.size(); ++a) {
      for (std::size_t b = a; b < modes.size(); ++b) {
        const double expected = a == b ? 1.0 : 0.0;
        spin_worst = std::max(spin_worst, std::abs(inner_product(modes[a], modes[b]) - expected));
      }
    }
    worst = std::max(worst, spin_worst);
    report.results.push_back(
        {{"spin_weight", s}, {"modes", modes.size()}, {"max_residual", spin_worst}});
  }
  finish(report, worst, tol);
  return report;
}

RunReport suite_ladder(const VerifyOptions& o) {
  RunReport report;
  report.command = "verify ladder";
  const int band = o.band_limit.value_or(8);
  const double tol = o.tolerance.value_or(1e-8);
  report.parameters["L"] = band;
  const GridPtr grid = make_grid(band);
  double worst = 0.0;
  for (const int s : spins_or_default(o)) {
    double jz = 0.0;
    double jp = 0.0;
    double jm = 0.0;
    double j2 = 0.0;
    for (int j = std::abs(s); j <= band; ++j) {
      for (int m = -j; m <= j; ++m) {
        const GridFunction f = sample_swsh(grid, {s, j, m});
        jz = std::max(jz, max_abs_difference(apply_grid({OperatorKind::Jz, s}, f),
                                             scaled(f, static_cast<double>(m))));
        j2 = std::max(j2, max_abs_difference(apply_grid({OperatorKind::Jsquared, s}, f),
                                             scaled(f, static_cast<double>(j) * (j + 1))));
        for (const int sign : {+1, -1}) {
          const GridFunction lhs =
              apply_grid({sign > 0 ? OperatorKind::Jplus : OperatorKind::Jminus, s}, f);
          const GridFunction rhs =
              std::abs(m + sign) <= j
                  ? scaled(sample_swsh(grid, {s, j, m + sign}), ladder_coefficient(j, m, sign))
                  : GridFunction(grid, s);
          (sign > 0 ? jp : jm) = std::max(sign > 0 ? jp : jm, max_abs_difference(lhs, rhs));
        }
      }
    }
    worst = std::max({worst, jz, jp, jm, j2});
    report.results.push_back({{"spin_weight", s},
                              {"Jz", jz},
                              {"Jplus", jp},
                              {"Jminus", jm},
                              {"Jsquared", j2}});
  }
  finish(report, worst, tol);
  return report;
}

RunReport suite_casimir(const VerifyOptions& o) {
  RunReport report;
  report.command = "verify casimir";
  const int band = o.band_limit.value_or(10);
  const int s = o.spin_weight.value_or(-1);
  const double tol = o.tolerance.value_or(1e-11);
  constexpr int kDraws = 10;
  report.parameters["L"] = band;
  report.parameters["spin_weight"] = s;
  report.parameters["seed"] = o.seed;
  report.parameters["draws"] = kDraws;
  Rng rng(o.seed);
  double casimir = 0.0;
  double zpm = 0.0;
  double pm = 0.0;
  const OperatorSpec jz{OperatorKind::Jz, s};
  const OperatorSpec jp{OperatorKind::Jplus, s};
  const OperatorSpec jm{OperatorKind::Jminus, s};
  for (int d = 0; d < kDraws; ++d) {
    const CoefficientSet c = random_coefficients(rng, s, band);
    casimir = std::max(casimir, verify_casimir_identity(s, c));
    // [Jz, J±] = ±J±
    for (const auto& [ladder, sign] : {std::pair{jp, 1.0}, std::pair{jm, -1.0}}) {
      const CoefficientSet comm = apply_coeff(jz, apply_coeff(ladder, c)) +
                                  cdouble(-1.0) * apply_coeff(ladder, apply_coeff(jz, c));
      zpm = std::max(zpm, max_abs_difference(comm, cdouble(sign) * apply_coeff(ladder, c)));
    }
    // [J+, J-] = 2 Jz
    const CoefficientSet comm = apply_coeff(jp, apply_coeff(jm, c)) +
                                cdouble(-1.0) * apply_coeff(jm, apply_coeff(jp, c));
    pm = std::max(pm, max_abs_difference(comm, cdouble(2.0) * apply_coeff(jz, c)));
  }
  report.results.push_back({{"identity", "J2 = J-J+ + Jz^2 + Jz"}, {"max_residual", casimir}});
  report.results.push_back({{"identity", "[Jz, J+-] = +-J+-"}, {"max_residual", zpm}});
  report.results.push_back({{"identity", "[J+, J-] = 2 Jz"}, {"max_residual", pm}});
  finish(report, std::max({casimir, zpm, pm}), tol);
  return report;
}

RunReport suite_lemma(const VerifyOptions& o) {
  RunReport report;
  report.command = "verify lemma";
  const int band = o.band_limit.value_or(8);
  const double tol = o.tolerance.value_or(1e-5);
  constexpr int kSections = 20;
  report.parameters["L"] = band;
  report.parameters["seed"] = o.seed;
  report.parameters["sections"] = kSections;
  const GridPtr grid = make_grid(band);
  Rng rng(o.seed);
  double worst = 0.0;
  for (const int h : helicities_or_default(o)) {
    double h_worst = 0.0;
    for (int n = 0; n < kSections; ++n) {
      const EmbeddedSection alpha = random_section(rng, grid, h, band - std::abs(h));
      const VectorOperatorResult spin = apply_projected_spin(alpha);
      const VectorOperatorResult orbital = apply_projected_orbital(alpha);
      for (int a = 0; a < 3; ++a) {
        Vec3 axis{0.0, 0.0, 0.0};
        axis[static_cast<std::size_t>(a)] = 1.0;
        const EmbeddedSection generator = apply_J_rotation(alpha, axis);
        const EmbeddedSection split =
            spin.axis[static_cast<std::size_t>(a)] + orbital.axis[static_cast<std::size_t>(a)];
        h_worst = std::max(h_worst, max_abs(split - generator) / norm(alpha));
      }
    }
    worst = std::max(worst, h_worst);
    report.results.push_back({{"helicity", h}, {"max_residual", h_worst}});
  }
  finish(report, worst, tol);
  return report;
}

RunReport suite_commutators(const VerifyOptions& o) {
  RunReport report;
  report.command = "verify commutators";
  const int band = o.band_limit.value_or(8);
  const double tol = o.tolerance.value_or(1e-5);
  constexpr int kSections = 10;
  report.parameters["L"] = band;
  report.parameters["seed"] = o.seed;
  report.parameters["sections"] = kSections;
  report.parameters["defect_floor"] = kDefectFloor;
  const GridPtr grid = make_grid(band);
  Rng rng(o.seed);
  double worst = 0.0;
  bool defects_ok = true;
  for (const int h : helicities_or_default(o)) {
    require_supported_helicity(h);
    const int profile_band = band - std::abs(h) - 2;
    if (profile_band < std::abs(h)) {
      throw Error(ErrorCode::BandLimitExceeded,
                  "commutator suite needs L >= 2|h| + 2 for headroom");
    }
    std::vector<EmbeddedSection> sections;
    for (int n = 0; n < kSections; ++n) {
      sections.push_back(random_section(rng, grid, h, profile_band));
    }
    const CommutatorReport r = commutator_report(h, sections);
    worst = std::max({worst, r.parallel_parallel, r.perp_parallel, r.perp_perp});
    defects_ok = defects_ok && r.parallel_so3_defect >= kDefectFloor &&
                 r.perp_so3_defect >= kDefectFloor;
    report.results.push_back({{"helicity", h},
                              {"par_par_zero", r.parallel_parallel},
                              {"perp_par", r.perp_parallel},
                              {"perp_perp", r.perp_perp},
                              {"par_so3_defect", r.parallel_so3_defect},
                              {"par_witness", r.parallel_witness},
                              {"perp_so3_defect", r.perp_so3_defect},
                              {"perp_witness", r.perp_witness}});
  }
  finish(report, worst, tol);
  report.pass = report.pass && defects_ok;
  return report;
}

RunReport suite_pointop(const VerifyOptions& o) {
  RunReport report;
  report.command = "verify pointop";
  const int band = o.band_limit.value_or(8);
  const double tol = o.tolerance.value_or(1e-12);
  constexpr int kPairs = 5;
  report.parameters["L"] = band;
  report.parameters["seed"] = o.seed;
  report.parameters["pairs"] = kPairs;
  const GridPtr grid = make_grid(band);
  Rng rng(o.seed);
  double worst = 0.0;
  for (const int h : helicities_or_default(o)) {
    double locality = 0.0;
    double helicity_action = 0.0;
    for (int n = 0; n < kPairs; ++n) {
      const EmbeddedSection alpha = random_section(rng, grid, h, band - std::abs(h));
      EmbeddedSection beta = random_section(rng, grid, h, band - std::abs(h));
      // beta agrees with alpha on every other node only.
      for (std::size_t node = 0; node < grid->node_count(); node += 2) {
        for (int c = 0; c < alpha.dim(); ++c) beta.at(node, c) = alpha.at(node, c);
      }
      const VectorOperatorResult pa = apply_projected_spin(alpha);
      const VectorOperatorResult pb = apply_projected_spin(beta);
      for (int i = 0; i < grid->theta_count(); ++i) {
        for (int k = 0; k < grid->phi_count(); ++k) {
          const std::size_t node = grid->index(i, k);
          const Vec3 kh = grid->k_hat(i, k);
          for (std::size_t a = 0; a < 3; ++a) {
            for (int c = 0; c < alpha.dim(); ++c) {
              // J_par α = (v·k̂) h α
              helicity_action =
                  std::max(helicity_action,
                           std::abs(pa.axis[a].at(node, c) - double(h) * kh[a] * alpha.at(node, c)));
              if (node % 2 == 0) {
                locality = std::max(locality,
                                    std::abs(pa.axis[a].at(node, c) - pb.axis[a].at(node, c)));
              }
            }
          }
        }
      }
    }
    worst = std::max({worst, locality, helicity_action});
    report.results.push_back(
        {{"helicity", h}, {"locality", locality}, {"helicity_action", helicity_action}});
  }
  finish(report, worst, tol);
  return report;
}

double expected_pole_limit(int h, int j, int m, Pole pole) {
  const double amplitude = std::sqrt((2.0 * j + 1.0) / (4.0 * kPi));
  if (pole == Pole::North && m == h) return (h % 2 == 0 ? 1.0 : -1.0) * amplitude;
  if (pole == Pole::South && m == -h) return (j % 2 == 0 ? 1.0 : -1.0) * amplitude;
  return 0.0;
}

RunReport suite_poles(const VerifyOptions& o) {
  RunReport report;
  report.command = "verify poles";
  const int s = o.spin_weight.value_or(-1);
  const int h = -s;
  const double tol = o.tolerance.value_or(1e-8);
  const int j_lo = o.j ? *o.j : std::abs(s);
  const int j_hi = o.j ? *o.j : 6;
  const int band = o.band_limit.value_or(std::max(j_hi, 8));
  report.parameters["spin_weight"] = s;
  report.parameters["L"] = band;
  const GridPtr grid = make_grid(band);
  double worst = 0.0;
  for (int j = j_lo; j <= j_hi; ++j) {
    for (int m = -j; m <= j; ++m) {
      const SWMode mode{s, j, m};
      const GridFunction f = sample_swsh(grid, mode);
      for (const Pole pole : {Pole::North, Pole::South}) {
        const PoleEstimate est = pole_limit_extrapolate(f, pole, h);
        const double expected = expected_pole_limit(h, j, m, pole);
        const double closed_form = eval_swsh_pole_limit(mode, pole);
        const double residual = std::max({std::abs(est.value - expected), est.residual,
                                          std::abs(closed_form - expected)});
        worst = std::max(worst, residual);
        if (expected != 0.0 || o.j) {
          report.results.push_back({{"j", j},
                                    {"m", m},
                                    {"pole", pole == Pole::North ? "north" : "south"},
                                    {"extrapolated_re", est.value.real()},
                                    {"extrapolated_im", est.value.imag()},
                                    {"expected", expected},
                                    {"spread", est.residual}});
        }
      }
    }
  }
  finish(report, worst, tol);
  return report;
}

RunReport suite_spectrum_match(const VerifyOptions& o) {
  RunReport report;
  report.command = "verify spectrum-match";
  const int s = o.spin_weight.value_or(-1);
  const int h = -s;
  const int band = o.band_limit.value_or(12);
  const double tol = o.tolerance.value_or(0.0);
  report.parameters["spin_weight"] = s;
  report.parameters["L"] = band;
  const GridPtr grid = make_grid(band);
  const MultipletSpectrum spectrum = massless_spectrum(h, std::max(band, std::abs(h)));
  double worst = 0.0;
  for (int j = 0; j <= band; ++j) {
    const int count = independent_mode_count(grid, s, j);
    const std::int64_t expected = (2 * j + 1) * spectrum.count(j);
    worst = std::max(worst, std::abs(static_cast<double>(count - expected)));
    report.results.push_back({{"j", j}, {"transform_modes", count}, {"expected", expected}});
  }
  finish(report, worst, tol);
  return report;
}

}  // namespace

RunReport run_suite(std::string_view name, const VerifyOptions& options) {
  RunReport report;
  if (name == "ortho") {
    report = suite_ortho(options);
  } else if (name == "ladder") {
    report = suite_ladder(options);
  } else if (name == "casimir") {
    report = suite_casimir(options);
  } else if (name == "lemma") {
    report = suite_lemma(options);
  } else if (name == "commutators") {
    report = suite_commutators(options);
  } else if (name == "pointop") {
    report = suite_pointop(options);
  } else if (name == "poles") {
    report = suite_poles(options);
  } else if (name == "spectrum-match") {
    report = suite_spectrum_match(options);
  } else {
    throw Error(ErrorCode::DomainError, "unknown suite '" + std::string(name) + "'");
  }
  if (options.spin_weight) report.parameters["spin_weight"] = *options.spin_weight;
  if (options.tolerance) report.parameters["tolerance"] = *options.tolerance;
  return report;
}

}  // namespace swsh
