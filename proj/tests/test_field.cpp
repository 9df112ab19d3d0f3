#include <cmath>
#include <random>

#include "chspindle/field.hpp"
#include "chspindle/util.hpp"
#include "doctest.h"

using namespace chspindle;

namespace {

Eigen::MatrixXd random_phys(int N, int M, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXd u(N, M);
  for (Eigen::Index k = 0; k < u.size(); ++k) u.data()[k] = dist(rng);
  return u;
}

}  // namespace

TEST_CASE("theta transform round trip") {
  const ThetaTransform T(17, 16);
  const Eigen::MatrixXd u = random_phys(17, 16, 99);
  const Eigen::MatrixXd back = T.to_physical(T.to_modal(u));
  CHECK((back - u).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("theta transform conventions") {
  const int N = 3, M = 8;
  const ThetaTransform T(N, M);
  Eigen::MatrixXd u(N, M);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < M; ++j) u(i, j) = std::cos(3.0 * (2.0 * kPi * j / M)) * (i + 1);
  Eigen::MatrixXcd md = T.to_modal(u);
  for (int i = 0; i < N; ++i) {
    for (int m = 0; m <= M / 2; ++m) {
      const double want_re = m == 3 ? 0.5 * M * (i + 1) : 0.0;
      CHECK(md(i, m).real() == doctest::Approx(want_re).epsilon(1e-12));
      CHECK(std::abs(md(i, m).imag()) < 1e-12);
    }
  }

  for (int i = 0; i < N; ++i)
    for (int j = 0; j < M; ++j) u(i, j) = std::sin(2.0 * (2.0 * kPi * j / M));
  md = T.to_modal(u);
  CHECK(md(0, 2).imag() == doctest::Approx(-0.5 * M).epsilon(1e-12));
  CHECK(std::abs(md(0, 2).real()) < 1e-12);

  u.setConstant(1.5);
  md = T.to_modal(u);
  CHECK(md(0, 0).real() == doctest::Approx(1.5 * M).epsilon(1e-13));
}

TEST_CASE("parseval identity") {
  const int N = 5, M = 16;
  const ThetaTransform T(N, M);
  const Eigen::MatrixXd u = random_phys(N, M, 7);
  const Eigen::MatrixXcd md = T.to_modal(u);
  for (int i = 0; i < N; ++i) {
    double lhs = 0.0;
    for (int j = 0; j < M; ++j) lhs += u(i, j) * u(i, j);
    double rhs = std::norm(md(i, 0)) + std::norm(md(i, M / 2));
    for (int m = 1; m < M / 2; ++m) rhs += 2.0 * std::norm(md(i, m));
    CHECK(lhs == doctest::Approx(rhs / M).epsilon(1e-12));
  }
}

TEST_CASE("transform shape validation") {
  const ThetaTransform T(4, 8);
  CHECK_THROWS_AS(T.to_modal(Eigen::MatrixXd::Zero(4, 6)), std::invalid_argument);
  CHECK_THROWS_AS(T.to_physical(Eigen::MatrixXcd::Zero(4, 4)), std::invalid_argument);
  CHECK_THROWS_AS(ThetaTransform(4, 12), std::invalid_argument);
}

TEST_CASE("laplacian of a constant field") {
  const SpindleGeometry geom = build_spindle(0.8, 0.8, 2.0, 0.5);
  const Discretization D = make_discretization(geom, 48, 1e-3, Grading::LogCollar, 8);
  Field u = D.make_field();
  u.phys.setConstant(2.5);
  Field lap = D.laplacian(u);
  D.to_physical(lap);
  for (int i = 0; i < D.n_radial(); ++i) {
    const double row_scale =
        std::abs(D.ops.mode(0).tdiag[i] / D.ops.mode(0).w[i]) * 2.5;
    for (int j = 0; j < D.n_theta; ++j)
      CHECK(std::abs(lap.phys(i, j)) <= 1e-13 * std::max(1.0, row_scale));
    if (D.grid.x[std::size_t(i)] > 0.1 && D.grid.x[std::size_t(i)] < 1.9)
      CHECK(std::abs(lap.phys(i, 0)) <= 1e-10);
  }
}

TEST_CASE("laplacian reproduces eigenpairs on a single mode line") {
  const SpindleGeometry geom = build_spindle(0.8, 1.2, 2.0, 0.5);
  const Discretization D = make_discretization(geom, 48, 1e-3, Grading::LogCollar, 16);
  const int m = 3, k = 5;
  const ModeOperator& op = D.ops.mode(m);
  const Eigen::VectorXd v = op.evecs.col(k);

  Field u = D.make_field();
  for (int i = 0; i < D.n_radial(); ++i)
    for (int j = 0; j < D.n_theta; ++j)
      u.phys(i, j) = v[i] * std::cos(m * (2.0 * kPi * j / D.n_theta));

  Field lap = D.laplacian(u);
  D.to_physical(lap);
  const double lam = op.evals[k];
  double err = 0.0;
  for (int i = 0; i < D.n_radial(); ++i)
    for (int j = 0; j < D.n_theta; ++j)
      err = std::max(err, std::abs(lap.phys(i, j) - lam * u.phys(i, j)));
  CHECK(err <= 1e-8 * std::abs(lam) * v.cwiseAbs().maxCoeff());
}

TEST_CASE("representation conversions are lazy and consistent") {
  const SpindleGeometry geom = build_spindle(1.0, 1.0, 2.0, 0.5);
  const Discretization D = make_discretization(geom, 32, 1e-2, Grading::LogCollar, 8);
  Field u = D.make_field();
  u.phys = random_phys(32, 8, 5);
  const Eigen::MatrixXd orig = u.phys;

  D.to_modal(u);
  CHECK(u.rep == Field::Rep::Modal);
  D.to_physical(u);
  CHECK((u.phys - orig).cwiseAbs().maxCoeff() < 1e-13);

  // physical()/modal() accessors convert on demand.
  Field v = D.make_field();
  v.phys = orig;
  const Eigen::MatrixXcd& md = D.modal(v);
  CHECK(md.rows() == 32);
  CHECK(md.cols() == 5);
}
