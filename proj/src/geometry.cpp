// geometry.cpp
#include "chspindle/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace chspindle {

CrossSectionSpectrum CrossSectionSpectrum::circle(double alpha, int k_max) {
  if (alpha <= 0.0) throw std::invalid_argument("circle spectrum: alpha must be positive");
  if (k_max < 1) throw std::invalid_argument("circle spectrum: k_max must be >= 1");
  CrossSectionSpectrum s;
  s.label = "circle(alpha=" + std::to_string(alpha) + ")";
  for (int k = 0; k <= k_max; ++k) {
    const double kk = double(k) / alpha;
    s.entries.push_back({-kk * kk, k == 0 ? 1 : 2});
  }
  return s;
}

CrossSectionSpectrum CrossSectionSpectrum::sphere(int j_max) {
  if (j_max < 1) throw std::invalid_argument("sphere spectrum: j_max must be >= 1");
  CrossSectionSpectrum s;
  s.label = "sphere";
  for (int j = 0; j <= j_max; ++j) s.entries.push_back({-double(j) * (j + 1), 2 * j + 1});
  return s;
}

double CrossSectionSpectrum::lambda1() const {
  validate();
  if (entries.size() < 2) throw std::invalid_argument("spectrum has no nonzero eigenvalue");
  return entries[1].lambda;
}

void CrossSectionSpectrum::validate() const {
  if (entries.empty()) throw std::invalid_argument("spectrum is empty");
  if (entries[0].lambda != 0.0) throw std::invalid_argument("spectrum must start at lambda = 0");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].multiplicity < 1) throw std::invalid_argument("spectrum multiplicity must be >= 1");
    if (i > 0 && !(entries[i].lambda < entries[i - 1].lambda))
      throw std::invalid_argument("spectrum eigenvalues must be strictly decreasing");
  }
}

namespace {

double horner(const std::array<double, 6>& c, double t) {
  double p = c[5];
  for (int k = 4; k >= 0; --k) p = p * t + c[k];
  return p;
}

double horner_d(const std::array<double, 6>& c, double t) {
  double p = 5.0 * c[5];
  for (int k = 4; k >= 1; --k) p = p * t + double(k) * c[k];
  return p;
}

}  // namespace

double SpindleGeometry::psi(double x) const {
  const double xc = collar_width, L = length;
  if (x <= xc) return alpha0 * x;
  if (x >= L - xc) return alphaL * (L - x);
  return horner(interior, (x - xc) / (L - 2.0 * xc));
}

double SpindleGeometry::dpsi(double x) const {
  const double xc = collar_width, L = length;
  if (x <= xc) return alpha0;
  if (x >= L - xc) return -alphaL;
  return horner_d(interior, (x - xc) / (L - 2.0 * xc)) / (L - 2.0 * xc);
}

std::pair<double, double> SpindleGeometry::profile_eval(double x) const {
  if (!(x >= 0.0 && x <= length)) throw std::invalid_argument("profile_eval: x outside [0, L]");
  return {psi(x), dpsi(x)};
}

SpindleGeometry build_spindle(double alpha0, double alphaL, double length, double collar_width) {
  if (!(alpha0 > 0.0) || !(alphaL > 0.0)) throw std::invalid_argument("build_spindle: cone slopes must be positive");
  if (!(length > 0.0)) throw std::invalid_argument("build_spindle: length must be positive");
  if (!(collar_width > 0.0) || !(collar_width < 0.5 * length))
    throw std::invalid_argument("build_spindle: need 0 < collar_width < length/2");

  SpindleGeometry g;
  g.alpha0 = alpha0;
  g.alphaL = alphaL;
  g.length = length;
  g.collar_width = collar_width;

  // Quintic Hermite in t = (x - x_c)/W, W = L - 2 x_c, with endpoint data
  // (value, d/dt, d2/dt2) = (alpha0 x_c, alpha0 W, 0) at t=0 and
  // (alphaL x_c, -alphaL W, 0) at t=1.
  const double W = length - 2.0 * collar_width;
  const double v0 = alpha0 * collar_width, d0 = alpha0 * W;
  const double v1 = alphaL * collar_width, d1 = -alphaL * W;
  // Basis (monomial coefficients c0..c5):
  //   H0 = 1 - 10t^3 + 15t^4 - 6t^5      value at 0
  //   H1 = t - 6t^3 + 8t^4 - 3t^5        slope at 0
  //   H3 = 10t^3 - 15t^4 + 6t^5          value at 1
  //   H4 = -4t^3 + 7t^4 - 3t^5           slope at 1
  g.interior = {
      v0,
      d0,
      0.0,
      -10.0 * v0 - 6.0 * d0 + 10.0 * v1 - 4.0 * d1,
      15.0 * v0 + 8.0 * d0 - 15.0 * v1 + 7.0 * d1,
      -6.0 * v0 - 3.0 * d0 + 6.0 * v1 - 3.0 * d1,
  };

  for (int i = 0; i <= 2048; ++i) {
    const double x = collar_width + (W * i) / 2048.0;
    if (!(g.psi(x) > 0.0)) throw std::invalid_argument("build_spindle: interior profile not positive");
  }
  return g;
}

double CutoffOmega::operator()(double x) const {
  if (!(inner < outer) && shape == Shape::SmoothstepQuintic)
    throw std::invalid_argument("cutoff: need inner < outer");
  if (shape == Shape::Indicator) return x <= inner ? 1.0 : 0.0;
  if (x <= inner) return 1.0;
  if (x >= outer) return 0.0;
  const double t = (x - inner) / (outer - inner);
  return 1.0 - (10.0 - (15.0 - 6.0 * t) * t) * t * t * t;
}

CutoffOmega CutoffOmega::default_for(const SpindleGeometry& geom) {
  return {geom.collar_width / 2.0, geom.collar_width, Shape::SmoothstepQuintic};
}

CutoffOmega CutoffOmega::indicator(double edge) {
  return {edge, edge, Shape::Indicator};
}

}  // namespace chspindle
