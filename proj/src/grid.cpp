// grid.cpp
#include "chspindle/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "chspindle/util.hpp"

namespace chspindle {

RadialGrid build_grid(const SpindleGeometry& geom, int n_radial, double x_min, Grading grading) {
  if (n_radial < 16) throw std::invalid_argument("build_grid: n_radial must be >= 16");
  if (!(x_min > 0.0)) throw std::invalid_argument("build_grid: x_min must be positive");
  if (!(x_min < geom.collar_width)) throw std::invalid_argument("build_grid: x_min must be below the collar width");

  const double L = geom.length, xc = geom.collar_width;
  RadialGrid g;
  g.grading = grading;
  g.x_min = x_min;

  if (grading == Grading::Uniform) {
    const double h = (L - 2.0 * x_min) / (n_radial - 1);
    for (int i = 0; i < n_radial; ++i) g.x.push_back(x_min + h * i);
  } else {
    // n_c + 1 geometric nodes per collar, the rest uniform across the middle.
    const int n_c = std::max(4, n_radial / 4);
    const int n_mid = n_radial - 2 * (n_c + 1);
    if (n_mid < 1) throw std::invalid_argument("build_grid: n_radial too small for log-collar grading");
    const double ratio = std::pow(xc / x_min, 1.0 / n_c);
    for (int j = 0; j <= n_c; ++j) g.x.push_back(x_min * std::pow(ratio, j));
    const double h = (L - 2.0 * xc) / (n_mid + 1);
    for (int j = 1; j <= n_mid; ++j) g.x.push_back(xc + h * j);
    for (int j = n_c; j >= 0; --j) g.x.push_back(L - x_min * std::pow(ratio, j));
  }
  g.x.front() = x_min;
  g.x.back() = L - x_min;

  const std::size_t N = g.x.size();
  g.psi.resize(N);
  g.dpsi.resize(N);
  g.cell.resize(N);
  g.w.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    auto [p, dp] = geom.profile_eval(g.x[i]);
    g.psi[i] = p;
    g.dpsi[i] = dp;
  }
  for (std::size_t i = 0; i < N; ++i) {
    const double left = i == 0 ? 0.0 : 0.5 * (g.x[i] - g.x[i - 1]);
    const double right = i + 1 == N ? 0.0 : 0.5 * (g.x[i + 1] - g.x[i]);
    g.cell[i] = left + right;
    g.w[i] = g.psi[i] * g.cell[i];
  }
  return g;
}

double volume(const RadialGrid& grid) { return 2.0 * kPi * pairwise_sum(grid.w); }

}  // namespace chspindle
