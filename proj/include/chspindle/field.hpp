// field.hpp
// Scalar fields on the discretized spindle and the theta transforms between
// physical values and Fourier-mode lines.
#pragma once

#include <Eigen/Dense>
#include <memory>

#include "chspindle/operators.hpp"

namespace chspindle {

// Batched real FFT along theta, one line per radial node. Forward is the
// unnormalized half spectrum u_hat_m = sum_j u_j exp(-2 pi i m j / M);
// inverse applies the 1/M scale so the round trip is the identity.
class ThetaTransform {
 public:
  ThetaTransform(int n_radial, int n_theta);
  ~ThetaTransform();
  ThetaTransform(const ThetaTransform&) = delete;
  ThetaTransform& operator=(const ThetaTransform&) = delete;

  Eigen::MatrixXcd to_modal(const Eigen::MatrixXd& phys) const;
  Eigen::MatrixXd to_physical(const Eigen::MatrixXcd& modal) const;

  int n_radial() const { return n_; }
  int n_theta() const { return m_; }

 private:
  int n_, m_;
  void* fwd_ = nullptr;  // fftw plans
  void* bwd_ = nullptr;
  double* rbuf_ = nullptr;
  void* cbuf_ = nullptr;
};

struct Field {
  enum class Rep { Physical, Modal };
  Eigen::MatrixXd phys;    // n_radial x n_theta
  Eigen::MatrixXcd modal;  // n_radial x (n_theta/2 + 1)
  Rep rep = Rep::Physical;
};

// Everything a simulation needs: geometry, grid, per-mode operators, and the
// theta transform. Modes are independent; the set is safe to build and apply
// as a parallel map over m.
struct Discretization {
  SpindleGeometry geom;
  RadialGrid grid;
  int n_theta = 0;
  ModeOperatorSet ops;
  std::shared_ptr<ThetaTransform> transform;

  int n_radial() const { return int(grid.size()); }
  int m_max() const { return n_theta / 2; }

  Field make_field() const;
  void to_modal(Field& f) const;
  void to_physical(Field& f) const;
  const Eigen::MatrixXd& physical(Field& f) const;
  const Eigen::MatrixXcd& modal(Field& f) const;

  // Laplace-Beltrami via the per-mode operators; result in the modal
  // representation.
  Field laplacian(const Field& u) const;
};

Discretization make_discretization(const SpindleGeometry& geom, int n_radial, double x_min,
                                   Grading grading, int n_theta);

}  // namespace chspindle
