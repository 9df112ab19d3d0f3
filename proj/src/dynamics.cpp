// dynamics.cpp
#include "chspindle/dynamics.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "chspindle/util.hpp"

namespace chspindle {

namespace {

struct NoiseDraws {
  static constexpr int kHarmonics = 4;
  std::vector<std::array<double, kHarmonics>> amp, phase;  // per mode
  std::vector<double> step_pos, step_jump, mode_phase;
  double bound = 0.0;
};

// All draws happen in a fixed order with a fixed count, so the sampled
// function is independent of the grid.
NoiseDraws draw_noise(const Discretization& D, std::uint64_t seed, bool with_steps) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() { return double(rng() >> 11) * 0x1p-53; };
  auto gauss = [&]() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  };

  const double L = D.geom.length, xc = D.geom.collar_width;
  const int m_noise = std::min(6, D.m_max());
  NoiseDraws nd;
  nd.amp.resize(std::size_t(m_noise) + 1);
  nd.phase.resize(std::size_t(m_noise) + 1);
  for (int m = 0; m <= m_noise; ++m) {
    for (int k = 0; k < NoiseDraws::kHarmonics; ++k) {
      nd.amp[std::size_t(m)][std::size_t(k)] = gauss() / double((1 + m) * (k + 1));
      nd.phase[std::size_t(m)][std::size_t(k)] = 2.0 * kPi * uniform();
      nd.bound += std::abs(nd.amp[std::size_t(m)][std::size_t(k)]);
    }
    const double lo = std::max(0.35 * L, xc + 0.05 * L);
    const double hi = std::min(0.65 * L, L - xc - 0.05 * L);
    nd.step_pos.push_back(lo + (hi - lo) * uniform());
    nd.step_jump.push_back(gauss());
    nd.mode_phase.push_back(2.0 * kPi * uniform());
    if (with_steps && m <= 2) nd.bound += std::abs(0.7 * nd.step_jump.back());
  }
  if (!(nd.bound > 0.0)) nd.bound = 1.0;
  return nd;
}

// Interior harmonic profile for one mode; steps make the field rough in x.
double noise_profile(const NoiseDraws& nd, const Discretization& D, int m, double x, bool with_steps) {
  const double L = D.geom.length, xc = D.geom.collar_width;
  const double xi = (x - xc) / (L - 2.0 * xc);
  double g = 0.0;
  for (int k = 0; k < NoiseDraws::kHarmonics; ++k)
    g += nd.amp[std::size_t(m)][std::size_t(k)] * std::cos((k + 1) * kPi * xi + nd.phase[std::size_t(m)][std::size_t(k)]);
  if (with_steps && m <= 2 && x > nd.step_pos[std::size_t(m)]) g += 0.7 * nd.step_jump[std::size_t(m)];
  return g;
}

double envelope_exponent(double alpha, int m) { return m == 0 ? 0.0 : std::min(double(m) / alpha, 4.0); }

// Noise field sampled on the grid, sup-bounded by 1, modal construction with
// exact collar envelopes.
Field noise_field(const Discretization& D, std::uint64_t seed, bool with_steps) {
  const NoiseDraws nd = draw_noise(D, seed, with_steps);
  const double L = D.geom.length, xc = D.geom.collar_width;
  const int N = D.n_radial(), M = D.n_theta;
  const int m_noise = int(nd.amp.size()) - 1;

  Field f;
  f.rep = Field::Rep::Modal;
  f.modal = Eigen::MatrixXcd::Zero(N, M / 2 + 1);
  for (int m = 0; m <= m_noise; ++m) {
    const double base0 = noise_profile(nd, D, m, xc, with_steps);
    const double base1 = noise_profile(nd, D, m, L - xc, with_steps);
    const double sig0 = envelope_exponent(D.geom.alpha0, m);
    const double sigL = envelope_exponent(D.geom.alphaL, m);
    const bool real_line = m == 0 || m == M / 2;
    const std::complex<double> phase =
        real_line ? std::complex<double>(std::cos(nd.mode_phase[std::size_t(m)]), 0.0)
                  : std::exp(std::complex<double>(0.0, nd.mode_phase[std::size_t(m)]));
    const double factor = real_line ? double(M) : 0.5 * double(M);
    for (int i = 0; i < N; ++i) {
      const double x = D.grid.x[std::size_t(i)];
      double g;
      if (x < xc)
        g = base0 * std::pow(x / xc, sig0);
      else if (x > L - xc)
        g = base1 * std::pow((L - x) / xc, sigL);
      else
        g = noise_profile(nd, D, m, x, with_steps);
      f.modal(i, m) = factor * (g / nd.bound) * phase;
    }
  }
  D.to_physical(f);
  return f;
}

}  // namespace

Field make_initial(const Discretization& D, const InitialSpec& spec) {
  if (spec.amplitude < 0.0) throw std::invalid_argument("make_initial: amplitude must be >= 0");
  switch (spec.kind) {
    case InitialKind::PurePhasePerturbed: {
      Field f = noise_field(D, spec.seed, false);
      f.phys = (spec.amplitude * f.phys.array() + 1.0).matrix();
      return f;
    }
    case InitialKind::Random: {
      Field f = noise_field(D, spec.seed, true);
      f.phys *= spec.amplitude;
      return f;
    }
    case InitialKind::ModeBump: {
      if (spec.m < 0 || spec.m > D.m_max()) throw std::invalid_argument("make_initial: mode_bump m out of range");
      if (spec.j < 1) throw std::invalid_argument("make_initial: mode_bump j must be >= 1");
      const double L = D.geom.length, xc = D.geom.collar_width;
      const int N = D.n_radial(), M = D.n_theta;
      Field f;
      f.rep = Field::Rep::Modal;
      f.modal = Eigen::MatrixXcd::Zero(N, M / 2 + 1);
      const double factor = (spec.m == 0 || spec.m == M / 2) ? double(M) : 0.5 * double(M);
      for (int i = 0; i < N; ++i) {
        const double x = D.grid.x[std::size_t(i)];
        if (x <= xc || x >= L - xc) continue;
        const double xi = (x - xc) / (L - 2.0 * xc);
        f.modal(i, spec.m) = factor * spec.amplitude * std::sin(spec.j * kPi * xi);
      }
      D.to_physical(f);
      return f;
    }
  }
  throw std::invalid_argument("make_initial: unknown kind");
}

double tip_closure_residual(const Discretization& D, const Field& u) {
  Field a = u;
  const Eigen::MatrixXcd& md = D.modal(a);
  const int N = D.n_radial(), M = D.n_theta;
  if (N < 3) throw std::invalid_argument("tip_closure_residual: need >= 3 radial nodes");
  const double floor_amp = 1e-10 * std::max(1.0, md.cwiseAbs().maxCoeff() / double(M));

  double res = 0.0;
  for (int tip = 0; tip < 2; ++tip) {
    auto node = [&](int k) { return tip == 0 ? k : N - 1 - k; };
    auto dist = [&](int k) {
      const double x = D.grid.x[std::size_t(node(k))];
      return tip == 0 ? x : D.geom.length - x;
    };
    for (int m = 0; m <= D.m_max(); ++m) {
      const double a0 = std::abs(md(node(0), m)) / double(M);
      const double a1 = std::abs(md(node(1), m)) / double(M);
      const double a2 = std::abs(md(node(2), m)) / double(M);
      const double amax = std::max({a0, a1, a2});
      if (amax < floor_amp) continue;
      if (m == 0) {
        res = std::max(res, std::max(std::abs(md(node(1), 0) - md(node(0), 0)),
                                     std::abs(md(node(2), 0) - md(node(1), 0))) /
                                (double(M) * amax));
      } else {
        if (a0 < floor_amp || a1 < floor_amp) continue;
        const double p = std::log(a1 / a0) / std::log(dist(1) / dist(0));
        const double pred = a1 * std::pow(dist(2) / dist(1), p);
        res = std::max(res, std::abs(a2 - pred) / amax);
      }
    }
  }
  return res;
}

void imex_step(const Discretization& D, Field& u, double dt, double S, bool nonlinear) {
  if (!(dt > 0.0)) throw std::invalid_argument("imex_step: dt must be positive");
  if (S < 0.0) throw std::invalid_argument("imex_step: stabilization must be >= 0");
  const int N = D.n_radial();

  D.to_physical(u);
  Eigen::MatrixXcd ghat;
  if (nonlinear) {
    const Eigen::MatrixXd g = (u.phys.array().cube() - u.phys.array()).matrix();
    ghat = D.transform->to_modal(g);
  }
  D.to_modal(u);

  Eigen::MatrixXd cu(N, 2), cg(N, 2);
  for (int m = 0; m <= D.m_max(); ++m) {
    const ModeOperator& op = D.ops.mode(m);
    if (!op.eig_ready) throw std::runtime_error("imex_step: eigendecomposition missing");
    Eigen::MatrixXd lines(N, 2);
    lines.col(0) = u.modal.col(m).real();
    lines.col(1) = u.modal.col(m).imag();
    // The zero eigenvalue keeps the weighted mean of the m = 0 line invariant;
    // restore it after reconstruction so mass is conserved to rounding.
    const double mean_before = m == 0 ? op.w.dot(lines.col(0)) : 0.0;
    cu = op.proj * lines;
    if (nonlinear) {
      lines.col(0) = ghat.col(m).real();
      lines.col(1) = ghat.col(m).imag();
      cg = op.proj * lines;
    }
    for (int k = 0; k < N; ++k) {
      const double lam = op.evals[k];
      const double mu = -lam;
      const double denom = 1.0 + dt * mu * mu + S * dt * mu;
      const double gain = (1.0 + S * dt * mu) / denom;
      cu(k, 0) *= gain;
      cu(k, 1) *= gain;
      if (nonlinear) {
        cu(k, 0) += dt * lam / denom * cg(k, 0);
        cu(k, 1) += dt * lam / denom * cg(k, 1);
      }
    }
    lines = op.evecs * cu;
    if (m == 0) lines.col(0).array() -= (op.w.dot(lines.col(0)) - mean_before) / op.w.sum();
    u.modal.col(m).real() = lines.col(0);
    u.modal.col(m).imag() = lines.col(1);
  }
}

TipFit fit_tip_exponent(const Discretization& D, const Field& u, int m, int tip, int lo, int hi) {
  if (m < 0 || m > D.m_max()) throw std::invalid_argument("fit_tip_exponent: mode out of range");
  if (lo < 0 || hi <= lo + 1 || hi >= D.n_radial()) throw std::invalid_argument("fit_tip_exponent: bad window");
  Field a = u;
  const Eigen::MatrixXcd& md = D.modal(a);
  const int N = D.n_radial(), M = D.n_theta;

  TipFit fit;
  fit.m = m;
  fit.tip = tip;
  std::vector<double> lx, ly;
  for (int k = lo; k <= hi; ++k) {
    const int i = tip == 0 ? k : N - 1 - k;
    const double d = tip == 0 ? D.grid.x[std::size_t(i)] : D.geom.length - D.grid.x[std::size_t(i)];
    const double amp = std::abs(md(i, m)) / double(M);
    if (amp < 1e-10) return fit;  // below noise floor: no fit
    lx.push_back(std::log(d));
    ly.push_back(std::log(amp));
  }
  const LineFit lf = fit_line(lx, ly);
  fit.ok = true;
  fit.rho_hat = lf.slope;
  fit.r2 = lf.r2;
  return fit;
}

DiagnosticsSeries run(const Discretization& D, Field& u, const SolverConfig& cfg,
                      const std::vector<NormRequest>& norm_requests,
                      const std::function<void(int, double, Field&)>& on_sample) {
  if (!(cfg.t_end >= 0.0)) throw std::invalid_argument("run: t_end must be >= 0");
  if (cfg.output_every < 1) throw std::invalid_argument("run: output_every must be >= 1");
  const long long steps = llround(cfg.t_end / cfg.dt);

  DiagnosticsSeries s;
  auto sample = [&](long long n) {
    const double t = double(n) * cfg.dt;
    const double e = energy(D, u);
    const double m0 = mass(D, u);
    if (!std::isfinite(e) || !std::isfinite(m0))
      throw std::runtime_error("run: non-finite state at step " + std::to_string(n));
    s.step.push_back(int(n));
    s.t.push_back(t);
    s.energy.push_back(e);
    s.mass.push_back(m0);
    s.grad_sq.push_back(grad_inner(D, u, u));
    std::vector<double> row;
    for (const auto& req : norm_requests) row.push_back(mellin_norm(D, u, req));
    s.norms.push_back(std::move(row));
    if (on_sample) on_sample(int(n), t, u);
  };

  for (long long n = 0; n < steps; ++n) {
    if (n % cfg.output_every == 0) sample(n);
    imex_step(D, u, cfg.dt, cfg.stabilization, cfg.nonlinear);
  }
  sample(steps);
  return s;
}

}  // namespace chspindle
