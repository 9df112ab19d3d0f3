// operators.hpp
// Per-Fourier-mode radial operators: conservative flux discretization of the
// Laplace-Beltrami operator with conical tip closures, and their spectra.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "chspindle/grid.hpp"

namespace chspindle {

// Mode-m radial operator L_m u = (1/psi)(psi u')' - (m/psi)^2 u, held in the
// W-symmetric form T = -W L_m (tridiagonal, positive semidefinite). Tip rows
// close the missing flux with the conical branch psi u' -> alpha*sigma*u,
// sigma = m/alpha; mode 0 closes with zero flux.
struct ModeOperator {
  int m = 0;
  double sigma0 = 0.0;  // m / alpha0
  double sigmaL = 0.0;  // m / alphaL
  Eigen::VectorXd tdiag;
  Eigen::VectorXd toff;  // subdiagonal, size N-1
  Eigen::VectorXd w;     // cell weights, copied from the grid

  // Eigendecomposition of L_m: eigenvalues nonincreasing (all <= 0),
  // eigenvectors w-orthonormal columns of V; proj = V^T W so that
  // coefficients are c = proj * u.
  Eigen::VectorXd evals;
  Eigen::MatrixXd evecs;
  Eigen::MatrixXd proj;
  bool eig_ready = false;

  Eigen::VectorXd apply(const Eigen::VectorXd& u) const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& u) const;
};

ModeOperator assemble_mode(const SpindleGeometry& geom, const RadialGrid& grid, int m);

// Generalized symmetric eigenproblem via the similarity W^{1/2} L W^{-1/2};
// for m = 0 the leading pair is pinned to (0, w-normalized constant).
void eigendecompose(ModeOperator& op);

struct ModeOperatorSet {
  std::vector<ModeOperator> ops;  // index m = 0..n_theta/2
  const ModeOperator& mode(int m) const { return ops.at(std::size_t(m)); }
  int m_max() const { return int(ops.size()) - 1; }
};

ModeOperatorSet build_mode_operators(const SpindleGeometry& geom, const RadialGrid& grid,
                                     int n_theta, bool with_eig = true);

}  // namespace chspindle
