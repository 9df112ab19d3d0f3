// operators.cpp
#include "chspindle/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace chspindle {

namespace {

template <typename Vec>
Vec apply_impl(const ModeOperator& op, const Vec& u) {
  const auto N = u.size();
  if (N != op.tdiag.size()) throw std::invalid_argument("mode operator: size mismatch");
  Vec r(N);
  for (Eigen::Index i = 0; i < N; ++i) {
    auto acc = op.tdiag[i] * u[i];
    if (i > 0) acc += op.toff[i - 1] * u[i - 1];
    if (i + 1 < N) acc += op.toff[i] * u[i + 1];
    r[i] = -acc / op.w[i];
  }
  return r;
}

}  // namespace

Eigen::VectorXd ModeOperator::apply(const Eigen::VectorXd& u) const { return apply_impl(*this, u); }
Eigen::VectorXcd ModeOperator::apply(const Eigen::VectorXcd& u) const { return apply_impl(*this, u); }

ModeOperator assemble_mode(const SpindleGeometry& geom, const RadialGrid& grid, int m) {
  if (m < 0) throw std::invalid_argument("assemble_mode: m must be >= 0");
  const std::size_t N = grid.size();
  ModeOperator op;
  op.m = m;
  op.sigma0 = double(m) / geom.alpha0;
  op.sigmaL = double(m) / geom.alphaL;
  op.w = Eigen::Map<const Eigen::VectorXd>(grid.w.data(), Eigen::Index(N));
  op.tdiag = Eigen::VectorXd::Zero(Eigen::Index(N));
  op.toff = Eigen::VectorXd::Zero(Eigen::Index(N) - 1);

  for (std::size_t i = 0; i + 1 < N; ++i) {
    const double h = grid.x[i + 1] - grid.x[i];
    const double a = geom.psi(0.5 * (grid.x[i] + grid.x[i + 1])) / h;  // face conductance
    op.tdiag[Eigen::Index(i)] += a;
    op.tdiag[Eigen::Index(i + 1)] += a;
    op.toff[Eigen::Index(i)] = -a;
  }
  for (std::size_t i = 0; i < N; ++i) {
    const double mm = double(m) / grid.psi[i];
    op.tdiag[Eigen::Index(i)] += mm * mm * grid.w[i];
  }
  // Conical closures replace the missing outer faces.
  op.tdiag[0] += geom.alpha0 * op.sigma0;
  op.tdiag[Eigen::Index(N) - 1] += geom.alphaL * op.sigmaL;
  return op;
}

void eigendecompose(ModeOperator& op) {
  const Eigen::Index N = op.tdiag.size();
  Eigen::VectorXd sqw = op.w.cwiseSqrt();
  Eigen::VectorXd diag(N), sub(N - 1);
  for (Eigen::Index i = 0; i < N; ++i) diag[i] = op.tdiag[i] / op.w[i];
  for (Eigen::Index i = 0; i + 1 < N; ++i) sub[i] = op.toff[i] / (sqw[i] * sqw[i + 1]);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigendecompose: tridiagonal QR failed");

  // mu ascending for T-form; L_m = -W^{-1} T has eigenvalues -mu, nonincreasing.
  op.evals = -es.eigenvalues();
  op.evecs = sqw.cwiseInverse().asDiagonal() * es.eigenvectors();
  if (op.m == 0) {
    op.evals[0] = 0.0;
    op.evecs.col(0).setConstant(1.0 / std::sqrt(op.w.sum()));
  }
  op.proj = op.evecs.transpose() * op.w.asDiagonal();
  op.eig_ready = true;
}

ModeOperatorSet build_mode_operators(const SpindleGeometry& geom, const RadialGrid& grid,
                                     int n_theta, bool with_eig) {
  if (n_theta < 4 || (n_theta & (n_theta - 1)) != 0)
    throw std::invalid_argument("build_mode_operators: n_theta must be a power of two >= 4");
  ModeOperatorSet set;
  set.ops.reserve(std::size_t(n_theta / 2) + 1);
  for (int m = 0; m <= n_theta / 2; ++m) {
    ModeOperator op = assemble_mode(geom, grid, m);
    if (with_eig) eigendecompose(op);
    set.ops.push_back(std::move(op));
  }
  return set;
}

}  // namespace chspindle
