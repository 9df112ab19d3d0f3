// functionals.hpp
// Quadrature functionals on discrete fields: weighted Mellin-Sobolev norms,
// the Cahn-Hilliard energy, mass, chemical potential, and Green residuals.
#pragma once

#include "chspindle/field.hpp"

namespace chspindle {

// Weighted norm request: integer order s in {0,1,2}, weight gamma, exponent p.
// Cutoff bounds < 0 select the geometry default (inner = x_c/2, outer = x_c).
struct NormRequest {
  int s = 0;
  double gamma = 0.0;
  double p = 2.0;
  CutoffOmega::Shape cutoff = CutoffOmega::Shape::SmoothstepQuintic;
  double cutoff_inner = -1.0;
  double cutoff_outer = -1.0;
};

double mass(const Discretization& D, const Field& u);
double inner_w(const Discretization& D, const Field& u, const Field& v);

// Independent gradient stencil: centered nonuniform differences in x,
// spectral differentiation in theta (distinct from the operator's flux form).
double grad_inner(const Discretization& D, const Field& u, const Field& v);

double energy(const Discretization& D, const Field& u);

// J(u) = -Lap(u) + u^3 - u, returned in physical representation.
Field chemical_potential(const Discretization& D, const Field& u);

// |grad_inner(w, v) + <w, Lap v>_w|.
double green_residual(const Discretization& D, const Field& w, const Field& v);

// Collar seminorms at both tips against the weight x^{(n+1)/2 - gamma} and
// measure (psi/x) dx/x dtheta, plus interior Sobolev seminorms on the
// (1 - omega) region; p-th root of the total.
double mellin_norm(const Discretization& D, const Field& u, const NormRequest& req);

// C_hat = max over collar nodes of |u - u_tip| / d^beta, d the distance to
// the tip, u_tip the mode-0 value at the nearest node.
double weighted_sup_bound(const Discretization& D, const Field& u, double beta, int tip);

// Radial derivative by centered nonuniform 3-point stencils (one-sided at the
// ends); acts on each theta column.
Eigen::MatrixXd radial_derivative(const RadialGrid& grid, const Eigen::MatrixXd& f);

// Spectral theta derivative (Nyquist line dropped).
Eigen::MatrixXd theta_derivative(const Discretization& D, const Eigen::MatrixXd& f);

}  // namespace chspindle
