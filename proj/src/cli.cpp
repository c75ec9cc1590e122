#include "swsh/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "swsh/grid.hpp"
#include "swsh/multiplets.hpp"
#include "swsh/transform.hpp"
#include "swsh/verify.hpp"

namespace swsh {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBandLimit = 3;
constexpr int kExitUnknownSuite = 4;

int exit_code_for(const Error& e) {
  return e.code() == ErrorCode::BandLimitExceeded ? kExitBandLimit : kExitUsage;
}

// Writes to --out when given, otherwise to out.
template <typename Fn>
void with_output(const std::string& path, std::ostream& out, Fn&& fn) {
  if (path.empty()) {
    fn(out);
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error(ErrorCode::ParseError, "cannot open '" + path + "' for writing");
  fn(file);
  if (!file) throw Error(ErrorCode::ParseError, "failed writing '" + path + "'");
}

std::ifstream open_input(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  return file;
}

struct EvalArgs {
  int s = 0;
  int j = 0;
  int m = 0;
  std::optional<double> theta;
  std::optional<double> phi;
  std::string pole;
  std::optional<int> grid;
  std::string out;
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const SWMode mode{a.s, a.j, a.m};
  require_valid(mode);
  if (a.grid) {
    if (a.theta || a.phi || !a.pole.empty()) {
      throw Error(ErrorCode::DomainError, "--grid cannot be combined with --theta/--phi/--pole");
    }
    if (*a.grid < 0) throw Error(ErrorCode::DomainError, "--grid needs L >= 0");
    const GridFunction f = sample_swsh(make_grid(*a.grid), mode);
    with_output(a.out, out, [&](std::ostream& os) { write_grid_csv(os, f); });
    return kExitOk;
  }
  cdouble value;
  if (!a.pole.empty()) {
    if (a.theta) throw Error(ErrorCode::DomainError, "--pole and --theta are exclusive");
    const Pole pole = a.pole == "north" ? Pole::North : Pole::South;
    value = eval_swsh_pole_limit(mode, pole);
  } else {
    if (!a.theta) throw Error(ErrorCode::DomainError, "--theta, --pole or --grid is required");
    value = eval_swsh(mode, *a.theta, a.phi.value_or(0.0));
  }
  out << format_double(value.real()) << ' ' << format_double(value.imag()) << '\n';
  return kExitOk;
}

struct TransformArgs {
  std::string direction;
  std::string in;
  std::string out;
  std::optional<int> band_limit;
  std::optional<int> spin_weight;
};

int cmd_transform(const TransformArgs& a, std::ostream& out) {
  std::ifstream in = open_input(a.in);
  if (a.direction == "analyze") {
    const GridFunction f = read_grid_csv(in);
    if (a.spin_weight && *a.spin_weight != f.spin_weight) {
      throw Error(ErrorCode::SpinWeightMismatch, "-s " + std::to_string(*a.spin_weight) +
                                                     " does not match file spin_weight=" +
                                                     std::to_string(f.spin_weight));
    }
    if (a.band_limit && *a.band_limit != f.grid->band_limit()) {
      throw Error(ErrorCode::GridMismatch, "-L " + std::to_string(*a.band_limit) +
                                               " does not match file L=" +
                                               std::to_string(f.grid->band_limit()));
    }
    const CoefficientSet c = analyze(f);
    with_output(a.out, out, [&](std::ostream& os) { write_coefficients_json(os, c); });
  } else {
    const CoefficientSet c = read_coefficients_json(in);
    if (a.spin_weight && *a.spin_weight != c.spin_weight()) {
      throw Error(ErrorCode::SpinWeightMismatch, "-s " + std::to_string(*a.spin_weight) +
                                                     " does not match file spin_weight=" +
                                                     std::to_string(c.spin_weight()));
    }
    const int band = a.band_limit.value_or(c.band_limit());
    if (band < 0) throw Error(ErrorCode::DomainError, "-L must be nonnegative");
    const GridFunction f = synthesize(c, make_grid(band));
    with_output(a.out, out, [&](std::ostream& os) { write_grid_csv(os, f); });
  }
  return kExitOk;
}

int cmd_verify(const std::string& suite, const VerifyOptions& options, std::ostream& out,
               std::ostream& err) {
  if (!is_known_suite(suite)) {
    err << "error: unknown suite '" << suite << "' (known:";
    for (const auto& name : suite_names()) err << ' ' << name;
    err << ")\n";
    return kExitUnknownSuite;
  }
  const RunReport report = run_suite(suite, options);
  out << report.to_json().dump(2) << '\n';
  return report.pass ? kExitOk : kExitFail;
}

struct MultipletArgs {
  std::optional<int> massless;
  std::optional<int> massive;
  int j_max = 20;
  std::optional<int> factor;
  std::optional<int> l_max;
  FactorSearchOptions search;
};

int cmd_multiplets(const MultipletArgs& a, std::ostream& out) {
  if (a.massless.has_value() == a.massive.has_value()) {
    throw Error(ErrorCode::DomainError, "exactly one of --massless and --massive is required");
  }
  const MultipletSpectrum target =
      a.massless ? massless_spectrum(*a.massless, a.j_max) : massive_spectrum(*a.massive, a.j_max);
  if (!a.factor) {
    write_spectrum_json(out, target);
    return kExitOk;
  }
  const auto solutions = factor_search(target, *a.factor, a.l_max.value_or(a.j_max), a.search);
  if (solutions.empty()) {
    out << "none\n";
    return kExitOk;
  }
  for (const auto& s : solutions) write_spectrum_json(out, s);
  return kExitOk;
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spin-weighted spherical harmonics toolkit", "swsh"};
  app.require_subcommand(1);

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Evaluate sY_jm at a point, a pole, or on a grid");
  eval->add_option("-s", eval_args.s, "spin weight")->required();
  eval->add_option("-j", eval_args.j, "total angular momentum")->required();
  eval->add_option("-m", eval_args.m, "magnetic number")->required();
  eval->add_option("--theta", eval_args.theta, "colatitude in (0, pi)");
  eval->add_option("--phi", eval_args.phi, "longitude");
  eval->add_option("--pole", eval_args.pole, "pole limit coefficient")
      ->check(CLI::IsMember({"north", "south"}));
  eval->add_option("--grid", eval_args.grid, "sample on the grid of band limit L");
  eval->add_option("--out", eval_args.out, "CSV output file (with --grid)");

  TransformArgs transform_args;
  auto* transform = app.add_subcommand("transform", "Analyze a grid CSV or synthesize coefficients");
  transform->add_option("direction", transform_args.direction, "analyze or synthesize")
      ->required()
      ->check(CLI::IsMember({"analyze", "synthesize"}));
  transform->add_option("--in", transform_args.in, "input file")->required();
  transform->add_option("--out", transform_args.out, "output file (default stdout)");
  transform->add_option("-L", transform_args.band_limit, "band limit");
  transform->add_option("-s", transform_args.spin_weight, "spin weight");

  std::string suite;
  VerifyOptions verify_options;
  auto* verify = app.add_subcommand("verify", "Run a verification suite, print a JSON report");
  verify->add_option("suite", suite, "suite name")->required();
  verify->add_option("-L", verify_options.band_limit, "band limit");
  verify->add_option("-s", verify_options.spin_weight, "spin weight");
  verify->add_option("-j", verify_options.j, "single j (poles)");
  verify->add_option("--tolerance", verify_options.tolerance, "pass threshold");
  verify->add_option("--seed", verify_options.seed, "PRNG seed (default 0)");

  MultipletArgs multiplet_args;
  auto* multiplets = app.add_subcommand("multiplets", "Multiplet spectra and factor search");
  multiplets->add_option("--massless", multiplet_args.massless, "helicity h");
  multiplets->add_option("--massive", multiplet_args.massive, "spin s");
  multiplets->add_option("--jmax", multiplet_args.j_max, "largest j (default 20)");
  multiplets->add_option("--factor-search", multiplet_args.factor, "search V_a (x) O = target");
  multiplets->add_option("--lmax", multiplet_args.l_max, "largest orbital l (default jmax)");
  multiplets->add_option("--max-mult", multiplet_args.search.max_multiplicity,
                         "largest orbital multiplicity (default 3)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help;
    const int code = app.exit(e, help, help);
    if (code == 0) {
      out << help.str();
      return kExitOk;
    }
    err << help.str();
    return kExitUsage;
  }

  try {
    if (*eval) return cmd_eval(eval_args, out);
    if (*transform) return cmd_transform(transform_args, out);
    if (*verify) return cmd_verify(suite, verify_options, out, err);
    if (*multiplets) return cmd_multiplets(multiplet_args, out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kExitUsage;
}

}  // namespace swsh
