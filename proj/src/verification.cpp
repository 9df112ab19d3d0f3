// verification.cpp
#include "chspindle/verification.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "chspindle/util.hpp"
#include "json.hpp"

namespace chspindle {

namespace {

// Real circulant for a symmetric Fourier symbol g(m), m the frequency
// magnitude min(mf, M - mf).
Eigen::MatrixXd theta_circulant(int M, const std::function<double(int)>& g) {
  Eigen::MatrixXd C(M, M);
  for (int j = 0; j < M; ++j)
    for (int jp = 0; jp < M; ++jp) {
      double acc = 0.0;
      for (int mf = 0; mf < M; ++mf) {
        const int mm = std::min(mf, M - mf);
        acc += g(mm) * std::cos(2.0 * kPi * mf * (j - jp) / double(M));
      }
      C(j, jp) = acc / double(M);
    }
  return C;
}

}  // namespace

DenseOperator dense_assemble(const SpindleGeometry& geom, const RadialGrid& grid, int n_theta) {
  const int N = int(grid.size()), M = n_theta;
  if (N * M > 4096) throw std::invalid_argument("dense_assemble: N * M exceeds the 4096 desk-scale cap");
  if (M < 4 || (M & (M - 1)) != 0) throw std::invalid_argument("dense_assemble: n_theta must be a power of two >= 4");

  DenseOperator d;
  d.n_radial = N;
  d.n_theta = M;
  d.mat = Eigen::MatrixXd::Zero(N * M, N * M);
  d.weights.resize(N * M);
  for (int j = 0; j < M; ++j)
    for (int i = 0; i < N; ++i) d.weights[i + N * j] = grid.w[std::size_t(i)] * 2.0 * kPi / double(M);

  // Radial flux part, block-diagonal over theta.
  Eigen::MatrixXd R = Eigen::MatrixXd::Zero(N, N);
  for (int i = 0; i + 1 < N; ++i) {
    const double h = grid.x[std::size_t(i) + 1] - grid.x[std::size_t(i)];
    const double a = geom.psi(0.5 * (grid.x[std::size_t(i)] + grid.x[std::size_t(i) + 1])) / h;
    R(i, i) -= a;
    R(i + 1, i + 1) -= a;
    R(i, i + 1) += a;
    R(i + 1, i) += a;
  }
  for (int i = 0; i < N; ++i) R.row(i) /= grid.w[std::size_t(i)];
  for (int j = 0; j < M; ++j) d.mat.block(N * j, N * j, N, N) += R;

  // Angular part psi^{-2} d2/dtheta2 via the spectral circulant.
  const Eigen::MatrixXd D2 = theta_circulant(M, [](int m) { return -double(m) * double(m); });
  for (int i = 0; i < N; ++i) {
    const double c = 1.0 / (grid.psi[std::size_t(i)] * grid.psi[std::size_t(i)]);
    for (int j = 0; j < M; ++j)
      for (int jp = 0; jp < M; ++jp) d.mat(i + N * j, i + N * jp) += c * D2(j, jp);
  }

  // Conical tip closures: flux alpha*sigma_m*u per mode; alpha*(m/alpha) = m,
  // so both tip rows take the same |dtheta| circulant.
  const Eigen::MatrixXd Lam = theta_circulant(M, [](int m) { return double(m); });
  for (int j = 0; j < M; ++j)
    for (int jp = 0; jp < M; ++jp) {
      d.mat(0 + N * j, 0 + N * jp) -= Lam(j, jp) / grid.w[0];
      d.mat((N - 1) + N * j, (N - 1) + N * jp) -= Lam(j, jp) / grid.w[std::size_t(N) - 1];
    }
  return d;
}

Eigen::MatrixXd dense_apply(const DenseOperator& dense, const Eigen::MatrixXd& phys) {
  const int N = dense.n_radial, M = dense.n_theta;
  if (phys.rows() != N || phys.cols() != M) throw std::invalid_argument("dense_apply: shape mismatch");
  Eigen::VectorXd flat = Eigen::Map<const Eigen::VectorXd>(phys.data(), N * M);
  Eigen::VectorXd out = dense.mat * flat;
  return Eigen::Map<const Eigen::MatrixXd>(out.data(), N, M);
}

double dense_symmetry_residual(const DenseOperator& dense) {
  const Eigen::MatrixXd S = dense.weights.asDiagonal() * dense.mat;
  const double scale = S.cwiseAbs().maxCoeff();
  return (S - S.transpose()).cwiseAbs().maxCoeff() / (scale > 0.0 ? scale : 1.0);
}

double oracle_compare_spectra(const DenseOperator& dense, const ModeOperatorSet& ops) {
  const int N = dense.n_radial, M = dense.n_theta;
  if (ops.m_max() != M / 2) throw std::invalid_argument("oracle_compare_spectra: mode count mismatch");
  if (ops.mode(0).tdiag.size() != N) throw std::invalid_argument("oracle_compare_spectra: grid mismatch");

  std::vector<double> mode_spec;
  for (int m = 0; m <= M / 2; ++m) {
    const ModeOperator& op = ops.mode(m);
    if (!op.eig_ready) throw std::invalid_argument("oracle_compare_spectra: eigendecomposition missing");
    const int mult = (m == 0 || m == M / 2) ? 1 : 2;
    for (int k = 0; k < N; ++k)
      for (int q = 0; q < mult; ++q) mode_spec.push_back(op.evals[k]);
  }
  std::sort(mode_spec.begin(), mode_spec.end());

  // Symmetrize in the weighted inner product before the dense eigensolve.
  Eigen::VectorXd sqw = dense.weights.cwiseSqrt();
  Eigen::MatrixXd B = sqw.asDiagonal() * dense.mat * sqw.cwiseInverse().asDiagonal();
  B = 0.5 * (B + B.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("oracle_compare_spectra: eigensolve failed");

  double err = 0.0;
  for (int k = 0; k < N * M; ++k) {
    const double a = es.eigenvalues()[k], b = mode_spec[std::size_t(k)];
    err = std::max(err, std::abs(a - b) / std::max(1.0, std::abs(b)));
  }
  return err;
}

double oracle_compare_action(const DenseOperator& dense, const Discretization& D,
                             int n_fields, std::uint64_t seed) {
  if (dense.n_radial != D.n_radial() || dense.n_theta != D.n_theta)
    throw std::invalid_argument("oracle_compare_action: grid mismatch");
  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() { return 2.0 * double(rng() >> 11) * 0x1p-53 - 1.0; };

  double err = 0.0;
  for (int t = 0; t < n_fields; ++t) {
    Field u;
    u.rep = Field::Rep::Physical;
    u.phys.resize(D.n_radial(), D.n_theta);
    for (Eigen::Index k = 0; k < u.phys.size(); ++k) u.phys.data()[k] = uniform();

    const Eigen::MatrixXd ref = dense_apply(dense, u.phys);
    Field fast = D.laplacian(u);
    D.to_physical(fast);
    const double scale = ref.cwiseAbs().maxCoeff();
    err = std::max(err, (ref - fast.phys).cwiseAbs().maxCoeff() / (scale > 0.0 ? scale : 1.0));
  }
  return err;
}

double frechet_check(const Discretization& D, const Field& u, const Field& v,
                     const std::vector<double>& eps_list) {
  if (eps_list.size() < 2) throw std::invalid_argument("frechet_check: need >= 2 epsilons");
  Field a = u, b = v;
  const Eigen::MatrixXd& up = D.physical(a);
  const Eigen::MatrixXd& vp = D.physical(b);

  Field cubic;
  cubic.rep = Field::Rep::Physical;
  cubic.phys = (up.array().cube() - up.array()).matrix();
  const double target = grad_inner(D, a, b) + inner_w(D, cubic, b);

  std::vector<double> le, lr;
  for (double eps : eps_list) {
    Field plus, minus;
    plus.rep = minus.rep = Field::Rep::Physical;
    plus.phys = up + eps * vp;
    minus.phys = up - eps * vp;
    const double q = (energy(D, plus) - energy(D, minus)) / (2.0 * eps);
    const double err = std::abs(q - target);
    if (err <= 1e-13 * std::max(1.0, std::abs(target))) continue;  // round-off floor
    le.push_back(std::log(eps));
    lr.push_back(std::log(err));
  }
  if (le.size() < 2) return 2.0;  // indistinguishable from exact
  return fit_line(le, lr).slope;
}

DissipationCheck dissipation_check(const Discretization& D, const Field& u0, double t_fixed,
                                   const std::vector<double>& dt_list, double S) {
  if (!(t_fixed > 0.0)) throw std::invalid_argument("dissipation_check: t_fixed must be positive");
  DissipationCheck out;

  std::vector<double> ld, lr;
  for (double dt : dt_list) {
    const long long steps = std::llround(t_fixed / dt);
    if (steps < 2) throw std::invalid_argument("dissipation_check: t_fixed must cover >= 2 steps");
    Field u = u0;
    double phi_prev = energy(D, u);
    double phi_last = phi_prev, phi_before = phi_prev;
    bool monotone = true;
    const double slack = 1e-12 * std::max(1.0, std::abs(phi_prev));
    for (long long n = 0; n < steps; ++n) {
      imex_step(D, u, dt, S);
      const double phi = energy(D, u);
      if (phi > phi_prev + slack) monotone = false;
      phi_before = phi_prev;
      phi_prev = phi;
      phi_last = phi;
    }
    Field J = chemical_potential(D, u);
    const double grad_j = grad_inner(D, J, J);
    const double r = std::abs((phi_last - phi_before) / dt + grad_j);
    out.residuals.push_back(r);
    out.monotone.push_back(monotone);
    if (r > 1e-13 * std::max(1.0, grad_j)) {
      ld.push_back(std::log(dt));
      lr.push_back(std::log(r));
    }
  }
  out.order = ld.size() >= 2 ? fit_line(ld, lr).slope : 1.0;
  return out;
}

bool VerifyReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

VerifyReport verify_suite() {
  VerifyReport rep;
  auto push = [&rep](const std::string& name, double value, double threshold, bool below = true) {
    rep.checks.push_back({name, below ? value <= threshold : value >= threshold, value, threshold});
  };

  const SpindleGeometry geom = build_spindle(0.8, 0.8, 2.0, 0.5);

  {
    const Discretization D = make_discretization(geom, 24, 0.01, Grading::LogCollar, 8);
    const DenseOperator dense = dense_assemble(geom, D.grid, 8);
    push("dense_symmetry", dense_symmetry_residual(dense), 1e-10);
    // Constants lie in the kernel; near-tip rows carry large entries, so the
    // cancellation residual is judged against each row's own scale.
    const Eigen::VectorXd r = dense.mat * Eigen::VectorXd::Ones(dense.mat.cols());
    const Eigen::VectorXd row_scale = dense.mat.cwiseAbs().rowwise().maxCoeff();
    push("dense_constant_kernel", (r.cwiseAbs().array() / row_scale.array().max(1.0)).maxCoeff(),
         1e-10);
    push("spectra_max_rel_err", oracle_compare_spectra(dense, D.ops), 1e-8);
    push("action_max_rel_err", oracle_compare_action(dense, D, 100, 2024), 1e-10);
  }

  {
    // Manufactured Green pair, supported away from the tips.
    auto bump = [](double x, double a, double b) {
      const double s = (2.0 * x - (a + b)) / (b - a);
      return std::abs(s) < 1.0 ? std::exp(-1.0 / (1.0 - s * s)) : 0.0;
    };
    std::vector<double> lh, lr;
    for (int N : {32, 64, 128}) {
      const Discretization D = make_discretization(geom, N, 1e-3, Grading::LogCollar, 8);
      Field w = D.make_field(), v = D.make_field();
      for (int i = 0; i < D.n_radial(); ++i) {
        const double x = D.grid.x[std::size_t(i)];
        for (int j = 0; j < D.n_theta; ++j) {
          const double th = 2.0 * kPi * j / D.n_theta;
          w.phys(i, j) = bump(x, 0.55, 1.45) * (1.0 + std::cos(th));
          v.phys(i, j) = bump(x, 0.65, 1.35) * (0.5 + std::cos(th));
        }
      }
      lh.push_back(std::log(1.0 / N));
      lr.push_back(std::log(green_residual(D, w, v)));
    }
    push("green_order", fit_line(lh, lr).slope, 1.8, false);
  }

  {
    const Discretization D = make_discretization(geom, 48, 1e-3, Grading::LogCollar, 16);
    Field u = make_initial(D, {InitialKind::PurePhasePerturbed, 0.3, 7});
    Field v = make_initial(D, {InitialKind::PurePhasePerturbed, 1.0, 8});
    v.phys.array() -= 1.0;  // direction field, zero mean-ish
    const double order = frechet_check(D, u, v, {1e-1, 3e-2, 1e-2, 3e-3, 1e-3});
    rep.checks.push_back({"frechet_order", std::abs(order - 2.0) <= 0.2, order, 2.0});

    Field u0 = make_initial(D, {InitialKind::PurePhasePerturbed, 0.2, 11});
    const DissipationCheck dc = dissipation_check(D, u0, 0.1, {4e-3, 2e-3, 1e-3, 5e-4}, 2.0);
    push("dissipation_order", dc.order, 0.9, false);
  }

  return rep;
}

std::string verify_report_json(const VerifyReport& r) {
  using json = nlohmann::ordered_json;
  json j;
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"value", c.value}, {"threshold", c.threshold}});
  j["checks"] = checks;
  j["all_pass"] = r.all_pass();
  return j.dump(2);
}

}  // namespace chspindle
