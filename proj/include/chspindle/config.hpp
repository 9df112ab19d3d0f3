// config.hpp
// Run configuration: flat key = value files, flag overrides, validation.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chspindle/dynamics.hpp"

namespace chspindle {

struct RunConfig {
  // geometry
  double alpha0 = 0.8;
  double alphaL = 0.8;
  double length = 2.0;
  double collar_width = 0.5;
  // grid
  int n_radial = 64;
  int n_theta = 16;
  double x_min = 1e-3;
  std::string grading = "log-collar";
  // solver
  double dt = kReferenceDt;
  double t_end = 1.0;
  double stabilization = 2.0;
  int output_every = 10;
  std::string initial_kind = "random";
  double initial_amplitude = 0.1;
  std::uint64_t initial_seed = 12345;
  int initial_m = 1;
  int initial_j = 1;
  // weights
  double gamma = -0.5;
  std::string norms = "0,-0.5,2;2,1.5,2";
  // output
  std::string out_dir = "out";
  std::string format = "csv";
  int snapshot_every = 0;  // 0: final snapshot only
};

// Applies one key = value pair; throws std::invalid_argument on unknown keys
// or unparsable values.
void apply_kv(RunConfig& cfg, const std::string& key, const std::string& value);

// Reads a flat key = value file ('#' comments, blank lines ignored).
void apply_config_file(RunConfig& cfg, const std::string& path);

// All violations, each naming the key and the admissible range; empty when
// valid. The gamma check cites the window computed from the cone angles.
std::vector<std::string> validate(const RunConfig& cfg);

std::vector<NormRequest> parse_norm_requests(const std::string& norms);

// Deterministic full echo, one key = value per line.
std::string resolved_config_text(const RunConfig& cfg);

Grading grading_of(const RunConfig& cfg);
InitialSpec initial_of(const RunConfig& cfg);
SolverConfig solver_of(const RunConfig& cfg);
Discretization discretization_of(const RunConfig& cfg);

}  // namespace chspindle
