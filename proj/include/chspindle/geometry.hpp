// geometry.hpp
// Spindle surfaces of revolution with two conical tips: radial profile,
// cutoff functions, and cross-section spectra.
#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace chspindle {

// Spectrum of the Laplacian on the cross section, listed as distinct
// eigenvalues (<= 0, strictly decreasing) with multiplicities.
struct CrossSectionSpectrum {
  struct Entry {
    double lambda;
    int multiplicity;
  };
  std::vector<Entry> entries;
  std::string label;

  // Circle of circumference 2*pi*alpha: lambda_k = -(k/alpha)^2.
  static CrossSectionSpectrum circle(double alpha, int k_max);
  // Unit 2-sphere: lambda_j = -j(j+1), multiplicity 2j+1.
  static CrossSectionSpectrum sphere(int j_max);

  double lambda1() const;  // greatest nonzero eigenvalue
  void validate() const;
};

// Radial profile psi(x) of a closed surface of revolution with metric
// dx^2 + psi(x)^2 dtheta^2 on (0, L). Exactly conical on the collars
// [0, x_c] and [L - x_c, L]; in between, the unique quintic joining the
// two cones with C^2 continuity.
struct SpindleGeometry {
  double alpha0 = 1.0;
  double alphaL = 1.0;
  double length = 2.0;
  double collar_width = 0.5;
  std::array<double, 6> interior{};  // quintic coefficients in t = (x - x_c)/(L - 2 x_c)

  double psi(double x) const;
  double dpsi(double x) const;
  // (psi, dpsi) with domain check; accepts 0 <= x <= L.
  std::pair<double, double> profile_eval(double x) const;
};

SpindleGeometry build_spindle(double alpha0, double alphaL, double length, double collar_width);

// Radial cutoff supported near a tip: 1 on [0, inner], 0 on [outer, inf),
// monotone nonincreasing.
struct CutoffOmega {
  enum class Shape { SmoothstepQuintic, Indicator };
  double inner = 0.25;
  double outer = 0.5;
  Shape shape = Shape::SmoothstepQuintic;

  double operator()(double x) const;
  static CutoffOmega default_for(const SpindleGeometry& geom);
  static CutoffOmega indicator(double edge);
};

}  // namespace chspindle
