// indicial.hpp
// Indicial roots of the Laplacian and bi-Laplacian near a conical tip,
// admissible weight windows, and the induced asymptotics ledger.
#pragma once

#include <complex>
#include <vector>

#include "chspindle/geometry.hpp"

namespace chspindle {

struct IndicialRoot {
  std::complex<double> value;
  double lambda;     // cross-section eigenvalue the root comes from
  int branch;        // +1 or -1
  bool shifted;      // true for the (n-5)/2 family of the bi-Laplacian
  int multiplicity;  // 2 when the +/- branches coincide, else 1
};

// Roots z = (n-1)/2 +/- sqrt(((n-1)/2)^2 - lambda_j) over the cross-section
// spectrum. Coincident branches are reported once with multiplicity 2.
std::vector<IndicialRoot> q_delta(int n, const CrossSectionSpectrum& spec);

// Union of the q_delta family and its shift by -2 in the centre term:
// z = (n-5)/2 +/- sqrt(((n-1)/2)^2 - lambda_j). Sorted by real part.
std::vector<IndicialRoot> q_delta_squared(int n, const CrossSectionSpectrum& spec);

struct GammaWindow {
  double lo = 0.0;
  double hi = 0.0;
  bool empty() const { return !(lo < hi); }
  bool contains(double g) const { return g > lo && g < hi; }
};

// Admissible weights: ((n-3)/2, min{-1 + sqrt(((n-1)/2)^2 - lambda_1), (n+1)/2}).
GammaWindow gamma_window(int n, double lambda1);

// True iff no indicial root of the Laplacian lies on the line
// Re z = (n-3)/2 - gamma (tolerance 1e-12).
bool minimal_domain_clean(int n, const CrossSectionSpectrum& spec, double gamma);

struct AsymptoticTerm {
  std::complex<double> rho;
  int max_log_power;  // bound on the log exponent, <= 3
};

// Distinct bi-Laplacian roots with real part in the half-open strip
// [(n-7)/2 - gamma, (n-3)/2 - gamma). Requires gamma inside the window.
std::vector<AsymptoticTerm> asymptotics_space(int n, const CrossSectionSpectrum& spec, double gamma);

struct Delta0 {
  double sup = 0.0;     // clipped to (0, 2]
  double chosen = 0.0;  // 0.9 * sup
};

// Flatness margin: sup over admissible delta0 of the embedding shift,
// inf over terms of (n+1)/2 - Re rho - gamma - 2, clipped to (0, 2].
Delta0 delta0(const std::vector<AsymptoticTerm>& terms, int n, double gamma);

struct IndicialReport {
  int n = 1;
  double gamma = 0.0;
  CrossSectionSpectrum spectrum;
  std::vector<IndicialRoot> q_delta;
  std::vector<IndicialRoot> q_delta2;
  GammaWindow window;
  bool domain_clean = false;
  std::vector<AsymptoticTerm> terms;
  Delta0 d0;
};

IndicialReport indicial_report(int n, const CrossSectionSpectrum& spec, double gamma);

std::string report_to_json(const IndicialReport& r);

}  // namespace chspindle
