// field.cpp
#include "chspindle/field.hpp"

#include <fftw3.h>

#include <cstring>
#include <stdexcept>

namespace chspindle {

ThetaTransform::ThetaTransform(int n_radial, int n_theta) : n_(n_radial), m_(n_theta) {
  if (n_radial < 1) throw std::invalid_argument("ThetaTransform: n_radial must be >= 1");
  if (n_theta < 4 || (n_theta & (n_theta - 1)) != 0)
    throw std::invalid_argument("ThetaTransform: n_theta must be a power of two >= 4");
  const int nc = m_ / 2 + 1;
  rbuf_ = fftw_alloc_real(std::size_t(n_) * std::size_t(m_));
  cbuf_ = fftw_alloc_complex(std::size_t(n_) * std::size_t(nc));
  const int n[1] = {m_};
  // Column-major N x M layout: theta lines are strided by N.
  fwd_ = fftw_plan_many_dft_r2c(1, n, n_, rbuf_, nullptr, n_, 1,
                                static_cast<fftw_complex*>(cbuf_), nullptr, n_, 1, FFTW_ESTIMATE);
  bwd_ = fftw_plan_many_dft_c2r(1, n, n_, static_cast<fftw_complex*>(cbuf_), nullptr, n_, 1,
                                rbuf_, nullptr, n_, 1, FFTW_ESTIMATE);
  if (!fwd_ || !bwd_) throw std::runtime_error("ThetaTransform: fftw planning failed");
}

ThetaTransform::~ThetaTransform() {
  if (fwd_) fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
  if (bwd_) fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
  fftw_free(rbuf_);
  fftw_free(cbuf_);
}

Eigen::MatrixXcd ThetaTransform::to_modal(const Eigen::MatrixXd& phys) const {
  if (phys.rows() != n_ || phys.cols() != m_) throw std::invalid_argument("to_modal: shape mismatch");
  const int nc = m_ / 2 + 1;
  std::memcpy(rbuf_, phys.data(), sizeof(double) * std::size_t(n_) * std::size_t(m_));
  fftw_execute(static_cast<fftw_plan>(fwd_));
  Eigen::MatrixXcd modal(n_, nc);
  std::memcpy(modal.data(), cbuf_, sizeof(fftw_complex) * std::size_t(n_) * std::size_t(nc));
  return modal;
}

Eigen::MatrixXd ThetaTransform::to_physical(const Eigen::MatrixXcd& modal) const {
  const int nc = m_ / 2 + 1;
  if (modal.rows() != n_ || modal.cols() != nc) throw std::invalid_argument("to_physical: shape mismatch");
  std::memcpy(cbuf_, modal.data(), sizeof(fftw_complex) * std::size_t(n_) * std::size_t(nc));
  fftw_execute(static_cast<fftw_plan>(bwd_));
  Eigen::MatrixXd phys(n_, m_);
  const double scale = 1.0 / double(m_);
  const double* r = rbuf_;
  for (Eigen::Index i = 0; i < phys.size(); ++i) phys.data()[i] = r[i] * scale;
  return phys;
}

Field Discretization::make_field() const {
  Field f;
  f.phys = Eigen::MatrixXd::Zero(n_radial(), n_theta);
  f.rep = Field::Rep::Physical;
  return f;
}

void Discretization::to_modal(Field& f) const {
  if (f.rep == Field::Rep::Modal) return;
  f.modal = transform->to_modal(f.phys);
  f.rep = Field::Rep::Modal;
}

void Discretization::to_physical(Field& f) const {
  if (f.rep == Field::Rep::Physical) return;
  f.phys = transform->to_physical(f.modal);
  f.rep = Field::Rep::Physical;
}

const Eigen::MatrixXd& Discretization::physical(Field& f) const {
  to_physical(f);
  return f.phys;
}

const Eigen::MatrixXcd& Discretization::modal(Field& f) const {
  to_modal(f);
  return f.modal;
}

Field Discretization::laplacian(const Field& u) const {
  Field v = u;
  to_modal(v);
  Field out;
  out.modal.resize(v.modal.rows(), v.modal.cols());
  for (int m = 0; m <= m_max(); ++m) out.modal.col(m) = ops.mode(m).apply(Eigen::VectorXcd(v.modal.col(m)));
  out.rep = Field::Rep::Modal;
  return out;
}

Discretization make_discretization(const SpindleGeometry& geom, int n_radial, double x_min,
                                   Grading grading, int n_theta) {
  Discretization d;
  d.geom = geom;
  d.grid = build_grid(geom, n_radial, x_min, grading);
  d.n_theta = n_theta;
  d.ops = build_mode_operators(geom, d.grid, n_theta, true);
  d.transform = std::make_shared<ThetaTransform>(int(d.grid.size()), n_theta);
  return d;
}

}  // namespace chspindle
