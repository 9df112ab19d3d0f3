// verification.hpp
// Brute-force oracles: dense product-grid assembly of the Laplacian, spectral
// cross-checks, Frechet-derivative and dissipation-identity checks.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chspindle/dynamics.hpp"

namespace chspindle {

// Dense Laplacian on the flattened physical grid, index p = i + N*j (radial
// fastest), sharing stencils and tip closures with the per-mode path.
struct DenseOperator {
  Eigen::MatrixXd mat;
  Eigen::VectorXd weights;  // w_i * 2 pi / M per point
  int n_radial = 0;
  int n_theta = 0;
};

// Refuses sizes above N * M > 4096.
DenseOperator dense_assemble(const SpindleGeometry& geom, const RadialGrid& grid, int n_theta);

Eigen::MatrixXd dense_apply(const DenseOperator& dense, const Eigen::MatrixXd& phys);

// || W A - (W A)^T ||_inf / || W A ||_inf.
double dense_symmetry_residual(const DenseOperator& dense);

// Sorted dense spectrum vs the union of per-mode spectra with theta
// multiplicities; max |a - b| / max(1, |b|).
double oracle_compare_spectra(const DenseOperator& dense, const ModeOperatorSet& ops);

// Max over seeded random fields of ||dense u - fast u||_inf / ||dense u||_inf.
double oracle_compare_action(const DenseOperator& dense, const Discretization& D,
                             int n_fields, std::uint64_t seed);

// Central-difference quotients of the energy against <J(u), v>_w; returns the
// fitted convergence order in eps (errors at round-off are excluded).
double frechet_check(const Discretization& D, const Field& u, const Field& v,
                     const std::vector<double>& eps_list);

struct DissipationCheck {
  double order = 0.0;               // fitted order of the residual in dt
  std::vector<double> residuals;    // |dPhi/dt + ||grad J||^2| at t_fixed, per dt
  std::vector<bool> monotone;       // Phi nonincreasing along the whole trajectory
};

// Evolves the same u0 to t_fixed with each dt and measures the energy-identity
// residual across the final step; by then the fast components are slaved, so
// the residual decays at first order.
DissipationCheck dissipation_check(const Discretization& D, const Field& u0, double t_fixed,
                                   const std::vector<double>& dt_list, double S);

struct CheckRow {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
};

struct VerifyReport {
  std::vector<CheckRow> checks;
  bool all_pass() const;
};

// The full oracle suite on fixed desk-scale grids.
VerifyReport verify_suite();

std::string verify_report_json(const VerifyReport& r);

}  // namespace chspindle
