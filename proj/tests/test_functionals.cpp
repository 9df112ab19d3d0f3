#include <cmath>
#include <random>

#include "chspindle/functionals.hpp"
#include "chspindle/util.hpp"
#include "doctest.h"

using namespace chspindle;

namespace {

Discretization default_disc(int N, int M, Grading grading = Grading::LogCollar,
                            double x_min = 1e-4) {
  return make_discretization(build_spindle(1.0, 1.0, 2.0, 0.5), N, x_min, grading, M);
}

Field random_field(const Discretization& D, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Field f = D.make_field();
  for (Eigen::Index k = 0; k < f.phys.size(); ++k) f.phys.data()[k] = dist(rng);
  return f;
}

double quartic_bump(double x, double a, double b) {
  if (x <= a || x >= b) return 0.0;
  const double z = kPi * (x - 0.5 * (a + b)) / (b - a);
  const double c = std::cos(z);
  return c * c * c * c;
}

}  // namespace

TEST_CASE("mass and energy of constants") {
  const Discretization D = default_disc(64, 8, Grading::LogCollar, 1e-2);
  const double vol = volume(D.grid);
  Field u = D.make_field();
  u.phys.setConstant(0.7);
  CHECK(mass(D, u) == doctest::Approx(0.7 * vol).epsilon(1e-13));
  // Gradient term vanishes, quartic term is exact on constants.
  const double well = 0.25 * (0.7 * 0.7 - 1.0) * (0.7 * 0.7 - 1.0);
  CHECK(energy(D, u) == doctest::Approx(well * vol).epsilon(1e-12));

  Field j = chemical_potential(D, u);
  const double want = 0.7 * 0.7 * 0.7 - 0.7;
  CHECK((j.phys.array() - want).abs().maxCoeff() < 1e-8);
}

TEST_CASE("inner product bilinearity and symmetry") {
  const Discretization D = default_disc(32, 8);
  const Field a = random_field(D, 1), b = random_field(D, 2), c = random_field(D, 3);
  Field combo = D.make_field();
  combo.phys = a.phys + 2.0 * b.phys;
  const double lhs = inner_w(D, combo, c);
  const double rhs = inner_w(D, a, c) + 2.0 * inner_w(D, b, c);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  CHECK(inner_w(D, a, b) == doctest::Approx(inner_w(D, b, a)).epsilon(1e-14));
  CHECK(inner_w(D, a, a) > 0.0);
}

TEST_CASE("green identity ties the gradient form to the operator") {
  const Discretization D = default_disc(96, 16, Grading::LogCollar, 1e-3);
  Field u = D.make_field(), v = D.make_field();
  for (int i = 0; i < D.n_radial(); ++i) {
    const double x = D.grid.x[std::size_t(i)];
    for (int j = 0; j < D.n_theta; ++j) {
      const double th = 2.0 * kPi * j / D.n_theta;
      u.phys(i, j) = quartic_bump(x, 0.6, 1.4) * (1.0 + std::cos(th));
      v.phys(i, j) = quartic_bump(x, 0.7, 1.3) * (0.5 + std::sin(th));
    }
  }
  const double g = grad_inner(D, u, v);
  CHECK(std::abs(g) > 0.01);
  CHECK(green_residual(D, u, v) < 0.05 * std::abs(g));
}

TEST_CASE("mellin norm matches hand integrals for a collar bump") {
  // u = x(1/4 - x) inside the inner cutoff radius of the x = 0 collar and zero
  // beyond it, on the alpha = 1 spindle where psi(x) = x exactly there. With
  // the indicator cutoff only the tip-0 collar piece survives:
  //   gamma = 0:   int_0^{1/4} x^3 (1/4 - x)^2 dx = 1/245760
  //   gamma = 1/2: int_0^{1/4} x^2 (1/4 - x)^2 dx = 1/30720
  const Discretization D = default_disc(600, 8, Grading::Uniform);
  Field u = D.make_field();
  for (int i = 0; i < D.n_radial(); ++i) {
    const double x = D.grid.x[std::size_t(i)];
    const double val = x < 0.25 ? x * (0.25 - x) : 0.0;
    u.phys.row(i).setConstant(val);
  }

  NormRequest req;
  req.s = 0;
  req.p = 2.0;
  req.cutoff = CutoffOmega::Shape::Indicator;

  req.gamma = 0.0;
  CHECK(mellin_norm(D, u, req) ==
        doctest::Approx(std::sqrt(2.0 * kPi / 245760.0)).epsilon(1e-3));
  req.gamma = 0.5;
  CHECK(mellin_norm(D, u, req) ==
        doctest::Approx(std::sqrt(2.0 * kPi / 30720.0)).epsilon(1e-3));
}

TEST_CASE("mellin norm rejects bad requests") {
  const Discretization D = default_disc(24, 8);
  const Field u = random_field(D, 4);
  NormRequest req;
  req.s = 3;
  CHECK_THROWS_AS(mellin_norm(D, u, req), std::invalid_argument);
  req.s = -1;
  CHECK_THROWS_AS(mellin_norm(D, u, req), std::invalid_argument);
  req.s = 0;
  req.p = 0.5;
  CHECK_THROWS_AS(mellin_norm(D, u, req), std::invalid_argument);
}

TEST_CASE("mellin norm smoothstep variant is finite and scales linearly") {
  const Discretization D = default_disc(64, 8);
  Field u = random_field(D, 9);
  NormRequest req;
  req.s = 2;
  req.gamma = -0.5;
  const double n1 = mellin_norm(D, u, req);
  CHECK(n1 > 0.0);
  CHECK(std::isfinite(n1));
  u.phys *= 3.0;
  CHECK(mellin_norm(D, u, req) == doctest::Approx(3.0 * n1).epsilon(1e-12));
}

TEST_CASE("weighted sup bound recovers a planted exponent") {
  const Discretization D = default_disc(64, 8);
  Field u = D.make_field(), v = D.make_field();
  for (int i = 0; i < D.n_radial(); ++i) {
    const double x = D.grid.x[std::size_t(i)];
    u.phys.row(i).setConstant(1.0 + 2.0 * std::pow(x, 0.8));
    v.phys.row(i).setConstant(3.0 * std::pow(2.0 - x, 1.2));
  }
  // The tip value is read off the innermost node, so the recovered constant is
  // 2 (1 - (x_min/d)^beta) maximized at the collar edge: just under 2.
  const double c0 = weighted_sup_bound(D, u, 0.8, 0);
  CHECK(c0 == doctest::Approx(2.0).epsilon(1e-2));
  CHECK(c0 < 2.0);
  const double cL = weighted_sup_bound(D, v, 1.2, 1);
  CHECK(cL == doctest::Approx(3.0).epsilon(1e-2));
}

TEST_CASE("radial derivative is exact on quadratics") {
  const Discretization D = default_disc(48, 8, Grading::LogCollar, 1e-3);
  const int N = D.n_radial();
  Eigen::MatrixXd f(N, 2);
  for (int i = 0; i < N; ++i) {
    const double x = D.grid.x[std::size_t(i)];
    f(i, 0) = 3.0 * x * x - 2.0 * x + 1.0;
    f(i, 1) = x * x + x;
  }
  const Eigen::MatrixXd d = radial_derivative(D.grid, f);
  for (int i = 0; i < N; ++i) {
    const double x = D.grid.x[std::size_t(i)];
    CHECK(d(i, 0) == doctest::Approx(6.0 * x - 2.0).epsilon(1e-9));
    CHECK(d(i, 1) == doctest::Approx(2.0 * x + 1.0).epsilon(1e-9));
  }
  CHECK_THROWS_AS(radial_derivative(D.grid, Eigen::MatrixXd::Zero(N + 1, 2)),
                  std::invalid_argument);
}

TEST_CASE("theta derivative is spectrally exact") {
  const Discretization D = default_disc(24, 16);
  const int N = D.n_radial(), M = D.n_theta;
  Eigen::MatrixXd f(N, M), nyq(N, M);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < M; ++j) {
      const double th = 2.0 * kPi * j / M;
      f(i, j) = std::cos(3.0 * th) + 0.5 * std::sin(5.0 * th);
      nyq(i, j) = std::cos(0.5 * M * th);
    }
  const Eigen::MatrixXd d = theta_derivative(D, f);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < M; ++j) {
      const double th = 2.0 * kPi * j / M;
      CHECK(d(i, j) == doctest::Approx(-3.0 * std::sin(3.0 * th) +
                                       2.5 * std::cos(5.0 * th))
                           .epsilon(1e-11));
    }
  CHECK(theta_derivative(D, nyq).cwiseAbs().maxCoeff() < 1e-12);
}
