// grid.hpp
// Radial grids on the truncated spindle [x_min, L - x_min] and the induced
// quadrature weights.
#pragma once

#include <cstddef>
#include <vector>

#include "chspindle/geometry.hpp"

namespace chspindle {

enum class Grading { LogCollar, Uniform };

struct RadialGrid {
  std::vector<double> x;     // nodes, strictly increasing
  std::vector<double> psi;   // psi(x_i)
  std::vector<double> dpsi;  // psi'(x_i)
  std::vector<double> cell;  // dual cell lengths c_i (trapezoid)
  std::vector<double> w;     // quadrature/operator weights psi_i * c_i
  Grading grading = Grading::LogCollar;
  double x_min = 0.0;

  std::size_t size() const { return x.size(); }
};

// LogCollar: geometric nodes on each collar [x_min, x_c] and its mirror,
// uniform in between, junctions kept as nodes. Uniform: equispaced.
RadialGrid build_grid(const SpindleGeometry& geom, int n_radial, double x_min, Grading grading);

// 2*pi * sum w_i: surface area of the truncated spindle.
double volume(const RadialGrid& grid);

}  // namespace chspindle
