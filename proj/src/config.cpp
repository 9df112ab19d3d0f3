// config.cpp
#include "chspindle/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "chspindle/indicial.hpp"
#include "chspindle/io.hpp"

namespace chspindle {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': cannot parse '" + v + "' as a number");
  }
  if (pos != v.size()) throw std::invalid_argument("config key '" + key + "': trailing junk in '" + v + "'");
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  const double x = to_double(key, v);
  if (x != std::floor(x)) throw std::invalid_argument("config key '" + key + "': '" + v + "' is not an integer");
  return int(x);
}

}  // namespace

void apply_kv(RunConfig& cfg, const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (key == "alpha0") cfg.alpha0 = to_double(key, v);
  else if (key == "alphaL") cfg.alphaL = to_double(key, v);
  else if (key == "length") cfg.length = to_double(key, v);
  else if (key == "collar_width") cfg.collar_width = to_double(key, v);
  else if (key == "n_radial") cfg.n_radial = to_int(key, v);
  else if (key == "n_theta") cfg.n_theta = to_int(key, v);
  else if (key == "x_min") cfg.x_min = to_double(key, v);
  else if (key == "grading") cfg.grading = v;
  else if (key == "dt") cfg.dt = to_double(key, v);
  else if (key == "t_end") cfg.t_end = to_double(key, v);
  else if (key == "stabilization") cfg.stabilization = to_double(key, v);
  else if (key == "output_every") cfg.output_every = to_int(key, v);
  else if (key == "initial.kind") cfg.initial_kind = v;
  else if (key == "initial.amplitude") cfg.initial_amplitude = to_double(key, v);
  else if (key == "initial.seed") cfg.initial_seed = std::uint64_t(to_double(key, v));
  else if (key == "initial.m") cfg.initial_m = to_int(key, v);
  else if (key == "initial.j") cfg.initial_j = to_int(key, v);
  else if (key == "gamma") cfg.gamma = to_double(key, v);
  else if (key == "norms") cfg.norms = v;
  else if (key == "out_dir") cfg.out_dir = v;
  else if (key == "format") cfg.format = v;
  else if (key == "snapshot_every") cfg.snapshot_every = to_int(key, v);
  else throw std::invalid_argument("unknown config key '" + key + "'");
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config file not found: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key = value");
    apply_kv(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

std::vector<NormRequest> parse_norm_requests(const std::string& norms) {
  std::vector<NormRequest> out;
  std::stringstream ss(norms);
  std::string triple;
  while (std::getline(ss, triple, ';')) {
    triple = trim(triple);
    if (triple.empty()) continue;
    std::stringstream ts(triple);
    std::string s_s, g_s, p_s;
    if (!std::getline(ts, s_s, ',') || !std::getline(ts, g_s, ',') || !std::getline(ts, p_s, ','))
      throw std::invalid_argument("norms: expected 's,gamma,p' triple, got '" + triple + "'");
    NormRequest r;
    r.s = to_int("norms.s", trim(s_s));
    r.gamma = to_double("norms.gamma", trim(g_s));
    r.p = to_double("norms.p", trim(p_s));
    out.push_back(r);
  }
  return out;
}

std::vector<std::string> validate(const RunConfig& cfg) {
  std::vector<std::string> bad;
  auto req = [&bad](bool ok, const std::string& msg) {
    if (!ok) bad.push_back(msg);
  };
  req(cfg.alpha0 > 0.0, "alpha0: must be > 0");
  req(cfg.alphaL > 0.0, "alphaL: must be > 0");
  req(cfg.length > 0.0, "length: must be > 0");
  req(cfg.collar_width > 0.0 && cfg.collar_width < 0.5 * cfg.length,
      "collar_width: must lie in (0, length/2)");
  req(cfg.n_radial >= 16, "n_radial: must be >= 16");
  req(cfg.n_theta >= 4 && (cfg.n_theta & (cfg.n_theta - 1)) == 0,
      "n_theta: must be a power of two >= 4");
  req(cfg.x_min > 0.0 && cfg.x_min < cfg.collar_width, "x_min: must lie in (0, collar_width)");
  req(cfg.grading == "log-collar" || cfg.grading == "uniform",
      "grading: must be 'log-collar' or 'uniform'");
  req(cfg.dt > 0.0, "dt: must be > 0");
  req(cfg.t_end >= 0.0, "t_end: must be >= 0");
  req(cfg.stabilization >= 0.0, "stabilization: must be >= 0");
  req(cfg.output_every >= 1, "output_every: must be >= 1");
  req(cfg.initial_kind == "random" || cfg.initial_kind == "mode_bump" ||
          cfg.initial_kind == "pure_phase_perturbed",
      "initial.kind: must be 'random', 'mode_bump', or 'pure_phase_perturbed'");
  req(cfg.initial_amplitude >= 0.0, "initial.amplitude: must be >= 0");
  req(cfg.initial_m >= 0 && cfg.initial_m <= cfg.n_theta / 2,
      "initial.m: must lie in [0, n_theta/2]");
  req(cfg.initial_j >= 1, "initial.j: must be >= 1");
  req(cfg.format == "csv", "format: only 'csv' is supported");
  req(cfg.snapshot_every >= 0, "snapshot_every: must be >= 0");

  if (cfg.alpha0 > 0.0 && cfg.alphaL > 0.0) {
    // Both boundary circles feed the admissible window; the larger cone
    // parameter gives the binding eigenvalue.
    const double amax = std::max(cfg.alpha0, cfg.alphaL);
    const GammaWindow w = gamma_window(1, -1.0 / (amax * amax));
    if (!w.contains(cfg.gamma))
      bad.push_back("gamma: " + format_double(cfg.gamma) + " outside the admissible window (" +
                    format_double(w.lo) + ", " + format_double(w.hi) + ")");
  }
  try {
    for (const auto& r : parse_norm_requests(cfg.norms)) {
      if (r.s < 0 || r.s > 2) bad.push_back("norms: s must be in {0,1,2}");
      if (!(r.p >= 1.0)) bad.push_back("norms: p must be >= 1");
    }
  } catch (const std::exception& e) {
    bad.push_back(e.what());
  }
  return bad;
}

std::string resolved_config_text(const RunConfig& cfg) {
  std::ostringstream os;
  os << "alpha0 = " << format_double(cfg.alpha0) << "\n";
  os << "alphaL = " << format_double(cfg.alphaL) << "\n";
  os << "length = " << format_double(cfg.length) << "\n";
  os << "collar_width = " << format_double(cfg.collar_width) << "\n";
  os << "n_radial = " << cfg.n_radial << "\n";
  os << "n_theta = " << cfg.n_theta << "\n";
  os << "x_min = " << format_double(cfg.x_min) << "\n";
  os << "grading = " << cfg.grading << "\n";
  os << "dt = " << format_double(cfg.dt) << "\n";
  os << "t_end = " << format_double(cfg.t_end) << "\n";
  os << "stabilization = " << format_double(cfg.stabilization) << "\n";
  os << "output_every = " << cfg.output_every << "\n";
  os << "initial.kind = " << cfg.initial_kind << "\n";
  os << "initial.amplitude = " << format_double(cfg.initial_amplitude) << "\n";
  os << "initial.seed = " << cfg.initial_seed << "\n";
  os << "initial.m = " << cfg.initial_m << "\n";
  os << "initial.j = " << cfg.initial_j << "\n";
  os << "gamma = " << format_double(cfg.gamma) << "\n";
  os << "norms = " << cfg.norms << "\n";
  os << "out_dir = " << cfg.out_dir << "\n";
  os << "format = " << cfg.format << "\n";
  os << "snapshot_every = " << cfg.snapshot_every << "\n";
  return os.str();
}

Grading grading_of(const RunConfig& cfg) {
  return cfg.grading == "uniform" ? Grading::Uniform : Grading::LogCollar;
}

InitialSpec initial_of(const RunConfig& cfg) {
  InitialSpec s;
  if (cfg.initial_kind == "random") s.kind = InitialKind::Random;
  else if (cfg.initial_kind == "mode_bump") s.kind = InitialKind::ModeBump;
  else s.kind = InitialKind::PurePhasePerturbed;
  s.amplitude = cfg.initial_amplitude;
  s.seed = cfg.initial_seed;
  s.m = cfg.initial_m;
  s.j = cfg.initial_j;
  return s;
}

SolverConfig solver_of(const RunConfig& cfg) {
  SolverConfig s;
  s.dt = cfg.dt;
  s.t_end = cfg.t_end;
  s.stabilization = cfg.stabilization;
  s.output_every = cfg.output_every;
  s.initial = initial_of(cfg);
  return s;
}

Discretization discretization_of(const RunConfig& cfg) {
  const SpindleGeometry geom = build_spindle(cfg.alpha0, cfg.alphaL, cfg.length, cfg.collar_width);
  return make_discretization(geom, cfg.n_radial, cfg.x_min, grading_of(cfg), cfg.n_theta);
}

}  // namespace chspindle
