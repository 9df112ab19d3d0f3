// cli.cpp
#include "chspindle/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "chspindle/config.hpp"
#include "chspindle/indicial.hpp"
#include "chspindle/io.hpp"
#include "chspindle/verification.hpp"

namespace chspindle {

namespace {

constexpr const char* kUsage =
    "chspindle <subcommand> [options]\n"
    "subcommands:\n"
    "  indicial        exponent ledger for a model cone (JSON to stdout)\n"
    "  simulate        run the Cahn-Hilliard dynamics; CSV series + snapshots\n"
    "  verify          run the oracle suite (JSON to stdout)\n"
    "  fit-asymptotics run the dynamics and fit near-tip exponents (CSV)\n"
    "run 'chspindle <subcommand> --help' for options\n";

struct IndicialArgs {
  int n = 1;
  double alpha = 1.0;
  double gamma = std::nan("");
  std::string cross_section = "circle";
  int truncation = 0;  // 0: auto
};

CrossSectionSpectrum auto_spectrum(const IndicialArgs& a, double gamma) {
  const double c = 0.5 * (a.n - 1);
  const double strip_lo = 0.5 * (a.n - 7) - gamma;
  const double strip_hi = 0.5 * (a.n - 3) - gamma;
  const double reach = std::max({c - 1.0 - strip_lo, strip_hi + 1.0 - c, 1.0}) + 0.5;
  const double lam_need = reach * reach - c * c;
  if (a.cross_section == "sphere") {
    int j = std::max(4, a.truncation);
    if (a.truncation == 0)
      while (double(j) * (j + 1) < lam_need) ++j;
    return CrossSectionSpectrum::sphere(j);
  }
  int k = std::max(4, a.truncation);
  if (a.truncation == 0)
    while (std::pow(double(k) / a.alpha, 2) < lam_need) ++k;
  return CrossSectionSpectrum::circle(a.alpha, k);
}

int cmd_indicial(const IndicialArgs& a) {
  if (a.cross_section != "circle" && a.cross_section != "sphere")
    throw std::invalid_argument("indicial: cross-section must be 'circle' or 'sphere'");
  if (a.cross_section == "sphere" && a.n != 2)
    throw std::invalid_argument("indicial: the sphere cross section requires --n 2");
  if (a.cross_section == "circle" && !(a.alpha > 0.0))
    throw std::invalid_argument("indicial: alpha must be > 0");

  const double lambda1 = a.cross_section == "sphere" ? -2.0 : -1.0 / (a.alpha * a.alpha);
  const GammaWindow w = gamma_window(a.n, lambda1);
  const double gamma = std::isnan(a.gamma) ? 0.5 * (w.lo + w.hi) : a.gamma;
  if (!w.contains(gamma))
    throw std::invalid_argument("indicial: gamma " + format_double(gamma) +
                                " outside the admissible window (" + format_double(w.lo) + ", " +
                                format_double(w.hi) + ")");
  const IndicialReport rep = indicial_report(a.n, auto_spectrum(a, gamma), gamma);
  std::cout << report_to_json(rep) << "\n";
  return 0;
}

int cmd_simulate(const RunConfig& cfg, bool with_fits, int fit_mode, int fit_tip) {
  const std::vector<std::string> bad = validate(cfg);
  if (!bad.empty()) {
    for (const auto& b : bad) std::cerr << "config error: " << b << "\n";
    return 1;
  }
  std::filesystem::create_directories(cfg.out_dir);

  Discretization D = discretization_of(cfg);
  Field u = make_initial(D, initial_of(cfg));
  const SolverConfig solver = solver_of(cfg);
  const std::vector<NormRequest> norms = parse_norm_requests(cfg.norms);

  std::vector<FitRow> fits;
  int sample_idx = 0;
  auto on_sample = [&](int step, double t, Field& state) {
    if (with_fits) {
      const TipFit f = fit_tip_exponent(D, state, fit_mode, fit_tip);
      if (f.ok) fits.push_back({t, f.m, f.rho_hat, f.r2});
    }
    if (cfg.snapshot_every > 0 && sample_idx % cfg.snapshot_every == 0)
      write_snapshot(cfg.out_dir, step, t, D, state);
    ++sample_idx;
  };

  DiagnosticsSeries series = run(D, u, solver, norms, on_sample);

  const std::filesystem::path dir(cfg.out_dir);
  write_text_file((dir / "config_resolved.txt").string(), resolved_config_text(cfg));
  if (with_fits) {
    write_text_file((dir / "fits.csv").string(), fits_csv(fits));
  } else {
    write_text_file((dir / "series.csv").string(), series_csv(series, norms));
    write_snapshot(cfg.out_dir, series.step.back(), series.t.back(), D, u);
  }
  return 0;
}

int cmd_verify() {
  const VerifyReport rep = verify_suite();
  std::cout << verify_report_json(rep) << "\n";
  return rep.all_pass() ? 0 : 2;
}

void add_config_options(CLI::App* sub, std::vector<std::pair<std::string, std::string>>& overrides,
                        std::string& config_path) {
  sub->add_option("--config", config_path, "flat key = value config file");
  static const std::vector<std::pair<std::string, std::string>> kFlags = {
      {"--alpha0", "alpha0"},           {"--alphaL", "alphaL"},
      {"--length", "length"},           {"--collar-width", "collar_width"},
      {"--n-radial", "n_radial"},       {"--n-theta", "n_theta"},
      {"--x-min", "x_min"},             {"--grading", "grading"},
      {"--dt", "dt"},                   {"--t-end", "t_end"},
      {"--stabilization", "stabilization"}, {"--output-every", "output_every"},
      {"--initial-kind", "initial.kind"},   {"--initial-amplitude", "initial.amplitude"},
      {"--initial-seed", "initial.seed"},   {"--initial-m", "initial.m"},
      {"--initial-j", "initial.j"},     {"--gamma", "gamma"},
      {"--norms", "norms"},             {"--out-dir", "out_dir"},
      {"--format", "format"},           {"--snapshot-every", "snapshot_every"},
  };
  for (const auto& [flag, key] : kFlags) {
    const std::string k = key;
    sub->add_option_function<std::string>(
        flag, [&overrides, k](const std::string& v) { overrides.emplace_back(k, v); });
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  static const std::vector<std::string> kSubcommands = {"indicial", "simulate", "verify",
                                                        "fit-asymptotics"};
  if (args.empty()) {
    std::cerr << kUsage;
    return 64;
  }
  if (args[0] == "-h" || args[0] == "--help") {
    std::cout << kUsage;
    return 0;
  }
  if (std::find(kSubcommands.begin(), kSubcommands.end(), args[0]) == kSubcommands.end()) {
    std::cerr << "unknown subcommand '" << args[0] << "'\n" << kUsage;
    return 64;
  }

  CLI::App app{"Cahn-Hilliard dynamics on spindle surfaces with conical tips", "chspindle"};
  app.require_subcommand(1);

  IndicialArgs ia;
  CLI::App* ind = app.add_subcommand("indicial", "exponent ledger for a model cone");
  ind->add_option("--n", ia.n, "cross-section dimension");
  ind->add_option("--alpha", ia.alpha, "cone parameter (circle circumference 2 pi alpha)");
  ind->add_option("--gamma", ia.gamma, "weight (default: window midpoint)");
  ind->add_option("--cross-section", ia.cross_section, "circle or sphere");
  ind->add_option("--truncation", ia.truncation, "spectrum truncation (0 = auto)");

  std::vector<std::pair<std::string, std::string>> sim_over, fit_over;
  std::string sim_cfg_path, fit_cfg_path;
  CLI::App* sim = app.add_subcommand("simulate", "run the dynamics");
  add_config_options(sim, sim_over, sim_cfg_path);
  CLI::App* fit = app.add_subcommand("fit-asymptotics", "fit near-tip exponents along a run");
  add_config_options(fit, fit_over, fit_cfg_path);
  int fit_mode = 1, fit_tip = 0;
  fit->add_option("--mode", fit_mode, "Fourier mode to fit");
  fit->add_option("--tip", fit_tip, "tip index: 0 (x=0) or 1 (x=L)");

  app.add_subcommand("verify", "run the oracle suite");

  std::vector<std::string> argv_s = args;
  argv_s.insert(argv_s.begin(), "chspindle");
  std::vector<char*> argv;
  argv.reserve(argv_s.size());
  for (auto& s : argv_s) argv.push_back(s.data());

  try {
    try {
      app.parse(int(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      std::cerr << e.what() << "\n";
      return 1;
    }

    if (ind->parsed()) return cmd_indicial(ia);
    if (app.get_subcommand("verify")->parsed()) return cmd_verify();

    const bool with_fits = fit->parsed();
    RunConfig cfg;
    const std::string& path = with_fits ? fit_cfg_path : sim_cfg_path;
    if (!path.empty()) apply_config_file(cfg, path);
    for (const auto& [k, v] : with_fits ? fit_over : sim_over) apply_kv(cfg, k, v);
    if (with_fits && (fit_tip < 0 || fit_tip > 1))
      throw std::invalid_argument("fit-asymptotics: tip must be 0 or 1");
    return cmd_simulate(cfg, with_fits, fit_mode, fit_tip);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace chspindle
