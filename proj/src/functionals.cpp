// functionals.cpp
#include "chspindle/functionals.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "chspindle/util.hpp"

namespace chspindle {

namespace {

// Lagrange 3-point derivative weights at evaluation point t.
inline void lagrange3(double a, double b, double c, double t, double& wa, double& wb, double& wc) {
  wa = (2.0 * t - b - c) / ((a - b) * (a - c));
  wb = (2.0 * t - a - c) / ((b - a) * (b - c));
  wc = (2.0 * t - a - b) / ((c - a) * (c - b));
}

double reduce(const Eigen::MatrixXd& terms) {
  return pairwise_sum(std::span<const double>(terms.data(), std::size_t(terms.size())));
}

}  // namespace

Eigen::MatrixXd radial_derivative(const RadialGrid& grid, const Eigen::MatrixXd& f) {
  const Eigen::Index N = f.rows();
  if (N != Eigen::Index(grid.size()) || N < 3) throw std::invalid_argument("radial_derivative: bad shape");
  Eigen::MatrixXd d(N, f.cols());
  double wa, wb, wc;
  for (Eigen::Index i = 0; i < N; ++i) {
    const Eigen::Index j = i == 0 ? 1 : (i == N - 1 ? N - 2 : i);
    lagrange3(grid.x[j - 1], grid.x[j], grid.x[j + 1], grid.x[i], wa, wb, wc);
    d.row(i) = wa * f.row(j - 1) + wb * f.row(j) + wc * f.row(j + 1);
  }
  return d;
}

Eigen::MatrixXd theta_derivative(const Discretization& D, const Eigen::MatrixXd& f) {
  Eigen::MatrixXcd modal = D.transform->to_modal(f);
  for (int m = 0; m < modal.cols(); ++m)
    modal.col(m) *= std::complex<double>(0.0, m < D.m_max() ? double(m) : 0.0);
  return D.transform->to_physical(modal);
}

double mass(const Discretization& D, const Field& u) {
  Field v = u;
  const Eigen::MatrixXd& ph = D.physical(v);
  Eigen::MatrixXd terms = ph;
  for (Eigen::Index j = 0; j < terms.cols(); ++j)
    terms.col(j).array() *= Eigen::Map<const Eigen::ArrayXd>(D.grid.w.data(), terms.rows());
  return reduce(terms) * 2.0 * kPi / double(D.n_theta);
}

double inner_w(const Discretization& D, const Field& u, const Field& v) {
  Field a = u, b = v;
  Eigen::MatrixXd terms = D.physical(a).cwiseProduct(D.physical(b));
  for (Eigen::Index j = 0; j < terms.cols(); ++j)
    terms.col(j).array() *= Eigen::Map<const Eigen::ArrayXd>(D.grid.w.data(), terms.rows());
  return reduce(terms) * 2.0 * kPi / double(D.n_theta);
}

double grad_inner(const Discretization& D, const Field& u, const Field& v) {
  Field a = u, b = v;
  const Eigen::MatrixXd& ua = D.physical(a);
  const Eigen::MatrixXd& vb = D.physical(b);
  const Eigen::MatrixXd ux = radial_derivative(D.grid, ua);
  const Eigen::MatrixXd vx = radial_derivative(D.grid, vb);
  const Eigen::MatrixXd ut = theta_derivative(D, ua);
  const Eigen::MatrixXd vt = theta_derivative(D, vb);
  Eigen::MatrixXd terms = ux.cwiseProduct(vx);
  for (Eigen::Index i = 0; i < terms.rows(); ++i) {
    const double ip2 = 1.0 / (D.grid.psi[std::size_t(i)] * D.grid.psi[std::size_t(i)]);
    terms.row(i) += ip2 * ut.row(i).cwiseProduct(vt.row(i));
    terms.row(i) *= D.grid.w[std::size_t(i)];
  }
  return reduce(terms) * 2.0 * kPi / double(D.n_theta);
}

double energy(const Discretization& D, const Field& u) {
  Field a = u;
  const Eigen::MatrixXd& ph = D.physical(a);
  Eigen::MatrixXd terms = (ph.array().square() - 1.0).square().matrix();
  for (Eigen::Index j = 0; j < terms.cols(); ++j)
    terms.col(j).array() *= Eigen::Map<const Eigen::ArrayXd>(D.grid.w.data(), terms.rows());
  const double quartic = reduce(terms) * 2.0 * kPi / double(D.n_theta);
  return 0.5 * grad_inner(D, u, u) + 0.25 * quartic;
}

Field chemical_potential(const Discretization& D, const Field& u) {
  Field a = u;
  Field lap = D.laplacian(a);
  D.to_physical(lap);
  const Eigen::MatrixXd& ph = D.physical(a);
  Field J;
  J.rep = Field::Rep::Physical;
  J.phys = (-lap.phys.array() + ph.array().cube() - ph.array()).matrix();
  return J;
}

double green_residual(const Discretization& D, const Field& w, const Field& v) {
  Field lap = D.laplacian(v);
  return std::abs(grad_inner(D, w, v) + inner_w(D, w, lap));
}

namespace {

struct CollarSide {
  CutoffOmega omega;
  bool at_zero;  // tip x = 0 or tip x = L
};

// One collar seminorm piece: |d^{(n+1)/2-gamma} (d d_r)^k dtheta^a (omega u)|^p
// against (psi/d) dd/d dtheta, d the distance to the tip.
double collar_piece(const Discretization& D, const Eigen::MatrixXd& uphys, const CollarSide& side,
                    int k, int a, double gamma, double p) {
  const Eigen::Index N = uphys.rows();
  const double L = D.geom.length;
  auto dist = [&](Eigen::Index i) { return side.at_zero ? D.grid.x[std::size_t(i)] : L - D.grid.x[std::size_t(i)]; };

  Eigen::MatrixXd T = uphys;
  for (Eigen::Index i = 0; i < N; ++i) T.row(i) *= side.omega(dist(i));
  for (int q = 0; q < a; ++q) T = theta_derivative(D, T);
  for (int q = 0; q < k; ++q) {
    T = radial_derivative(D.grid, T);
    for (Eigen::Index i = 0; i < N; ++i) T.row(i) *= side.at_zero ? dist(i) : -dist(i);
  }

  const bool indicator = side.omega.shape == CutoffOmega::Shape::Indicator;
  const double edge = indicator ? side.omega.inner : side.omega.outer;
  std::vector<double> parts;
  for (Eigen::Index i = 0; i < N; ++i) {
    const double d = dist(i);
    if (d > edge) continue;
    double cell = D.grid.cell[std::size_t(i)];
    if (indicator) {
      // Clip the outward half cell at the indicator edge.
      const double inward = side.at_zero ? (i > 0 ? 0.5 * (D.grid.x[std::size_t(i)] - D.grid.x[std::size_t(i) - 1]) : 0.0)
                                         : (i + 1 < N ? 0.5 * (D.grid.x[std::size_t(i) + 1] - D.grid.x[std::size_t(i)]) : 0.0);
      cell = inward + std::min(cell - inward, edge - d);
    }
    const double wgt = D.grid.psi[std::size_t(i)] / d * cell / d;
    const double xw = std::pow(d, 1.0 - gamma);
    for (Eigen::Index j = 0; j < T.cols(); ++j) parts.push_back(std::pow(std::abs(xw * T(i, j)), p) * wgt);
  }
  return pairwise_sum(parts) * 2.0 * kPi / double(D.n_theta);
}

double interior_piece(const Discretization& D, const Eigen::MatrixXd& uphys, const CutoffOmega& om0,
                      const CutoffOmega& omL, int k, int a, double p) {
  const Eigen::Index N = uphys.rows();
  const double L = D.geom.length;
  Eigen::MatrixXd T = uphys;
  for (Eigen::Index i = 0; i < N; ++i) {
    const double x = D.grid.x[std::size_t(i)];
    T.row(i) *= 1.0 - om0(x) - omL(L - x);
  }
  for (int q = 0; q < a; ++q) {
    T = theta_derivative(D, T);
    for (Eigen::Index i = 0; i < N; ++i) T.row(i) /= D.grid.psi[std::size_t(i)];
  }
  for (int q = 0; q < k; ++q) T = radial_derivative(D.grid, T);

  std::vector<double> parts;
  for (Eigen::Index i = 0; i < N; ++i)
    for (Eigen::Index j = 0; j < T.cols(); ++j)
      parts.push_back(std::pow(std::abs(T(i, j)), p) * D.grid.w[std::size_t(i)]);
  return pairwise_sum(parts) * 2.0 * kPi / double(D.n_theta);
}

}  // namespace

double mellin_norm(const Discretization& D, const Field& u, const NormRequest& req) {
  if (req.s < 0 || req.s > 2) throw std::invalid_argument("mellin_norm: s must be in {0,1,2}");
  if (!(req.p >= 1.0)) throw std::invalid_argument("mellin_norm: p must be >= 1");
  Field a = u;
  const Eigen::MatrixXd& ph = D.physical(a);

  CutoffOmega base = CutoffOmega::default_for(D.geom);
  CutoffOmega om = base;
  om.shape = req.cutoff;
  if (req.cutoff_inner >= 0.0) om.inner = req.cutoff_inner;
  if (req.cutoff_outer >= 0.0) om.outer = req.cutoff_outer;
  if (om.shape == CutoffOmega::Shape::Indicator) om.outer = om.inner;

  std::vector<double> pieces;
  for (int k = 0; k <= req.s; ++k)
    for (int aa = 0; k + aa <= req.s; ++aa) {
      pieces.push_back(collar_piece(D, ph, {om, true}, k, aa, req.gamma, req.p));
      pieces.push_back(collar_piece(D, ph, {om, false}, k, aa, req.gamma, req.p));
      pieces.push_back(interior_piece(D, ph, om, om, k, aa, req.p));
    }
  return std::pow(pairwise_sum(pieces), 1.0 / req.p);
}

double weighted_sup_bound(const Discretization& D, const Field& u, double beta, int tip) {
  Field a = u;
  const Eigen::MatrixXd& ph = D.physical(a);
  const Eigen::MatrixXcd& md = D.modal(a);
  const Eigen::Index N = ph.rows();
  const double L = D.geom.length;
  const bool at_zero = tip == 0;
  const double u_tip = (at_zero ? md(0, 0).real() : md(N - 1, 0).real()) / double(D.n_theta);

  double c_hat = 0.0;
  for (Eigen::Index i = 0; i < N; ++i) {
    const double d = at_zero ? D.grid.x[std::size_t(i)] : L - D.grid.x[std::size_t(i)];
    if (d > D.geom.collar_width) continue;
    const double scale = std::pow(d, -beta);
    for (Eigen::Index j = 0; j < ph.cols(); ++j)
      c_hat = std::max(c_hat, std::abs(ph(i, j) - u_tip) * scale);
  }
  return c_hat;
}

}  // namespace chspindle
