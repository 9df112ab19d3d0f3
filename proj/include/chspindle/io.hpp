// io.hpp
// Deterministic output emission: CSV series, binary snapshots with JSON
// sidecars.
#pragma once

#include <string>
#include <vector>

#include "chspindle/dynamics.hpp"

namespace chspindle {

// Shortest round-trippable decimal ('%.17g'-style via printf).
std::string format_double(double x);

void write_text_file(const std::string& path, const std::string& content);

std::string norm_column_name(const NormRequest& r);

// Header t,energy,mass,grad_sq[,norm_...]; '.' decimal, '\n' newlines.
std::string series_csv(const DiagnosticsSeries& s, const std::vector<NormRequest>& norms);

struct FitRow {
  double t = 0.0;
  int m = 0;
  double rho_hat = 0.0;
  double r2 = 0.0;
};

std::string fits_csv(const std::vector<FitRow>& rows);

// Raw little-endian doubles, column-major n_radial x n_theta (radial index
// fastest), plus a JSON sidecar describing grid, geometry, and time.
void write_snapshot(const std::string& dir, int step, double t, const Discretization& D, Field& u);

}  // namespace chspindle
