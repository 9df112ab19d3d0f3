// module.cpp
// pybind11 bindings: geometry, discretization, functionals, dynamics, and
// the verification suite. Fields cross the boundary as physical
// n_radial x n_theta arrays.
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <string>

#include "chspindle/dynamics.hpp"
#include "chspindle/indicial.hpp"
#include "chspindle/verification.hpp"

namespace py = pybind11;
using namespace chspindle;

namespace {

Grading grading_from(const std::string& name) {
  if (name == "log-collar") return Grading::LogCollar;
  if (name == "uniform") return Grading::Uniform;
  throw std::invalid_argument("grading: expected 'log-collar' or 'uniform', got '" + name + "'");
}

InitialKind kind_from(const std::string& name) {
  if (name == "random") return InitialKind::Random;
  if (name == "mode_bump") return InitialKind::ModeBump;
  if (name == "pure_phase_perturbed") return InitialKind::PurePhasePerturbed;
  throw std::invalid_argument("initial kind: expected 'random', 'mode_bump' or "
                              "'pure_phase_perturbed', got '" + name + "'");
}

CutoffOmega::Shape cutoff_from(const std::string& name) {
  if (name == "smoothstep") return CutoffOmega::Shape::SmoothstepQuintic;
  if (name == "indicator") return CutoffOmega::Shape::Indicator;
  throw std::invalid_argument("cutoff: expected 'smoothstep' or 'indicator', got '" + name + "'");
}

Field as_field(const Discretization& D, const Eigen::MatrixXd& u) {
  if (u.rows() != D.n_radial() || u.cols() != D.n_theta)
    throw std::invalid_argument("field: expected shape (" + std::to_string(D.n_radial()) +
                                ", " + std::to_string(D.n_theta) + ")");
  Field f = D.make_field();
  f.phys = u;
  f.rep = Field::Rep::Physical;
  return f;
}

CrossSectionSpectrum spectrum_from(const std::string& cross_section, double alpha, int truncation) {
  if (cross_section == "circle") return CrossSectionSpectrum::circle(alpha, truncation);
  if (cross_section == "sphere") return CrossSectionSpectrum::sphere(truncation);
  throw std::invalid_argument("cross_section: expected 'circle' or 'sphere', got '" +
                              cross_section + "'");
}

}  // namespace

PYBIND11_MODULE(_chspindle, m) {
  m.doc() = "Cahn-Hilliard dynamics on spindle surfaces with conical tips";

  py::class_<SpindleGeometry>(m, "SpindleGeometry")
      .def_readonly("alpha0", &SpindleGeometry::alpha0)
      .def_readonly("alphaL", &SpindleGeometry::alphaL)
      .def_readonly("length", &SpindleGeometry::length)
      .def_readonly("collar_width", &SpindleGeometry::collar_width)
      .def("psi", &SpindleGeometry::psi, py::arg("x"))
      .def("dpsi", &SpindleGeometry::dpsi, py::arg("x"))
      .def("__repr__", [](const SpindleGeometry& g) {
        return "SpindleGeometry(alpha0=" + std::to_string(g.alpha0) +
               ", alphaL=" + std::to_string(g.alphaL) +
               ", length=" + std::to_string(g.length) +
               ", collar_width=" + std::to_string(g.collar_width) + ")";
      });

  m.def("build_spindle", &build_spindle, py::arg("alpha0") = 1.0, py::arg("alphaL") = 1.0,
        py::arg("length") = 2.0, py::arg("collar_width") = 0.5);

  py::class_<Discretization>(m, "Discretization")
      .def_property_readonly("x", [](const Discretization& D) { return D.grid.x; })
      .def_property_readonly("psi", [](const Discretization& D) { return D.grid.psi; })
      .def_property_readonly("weights", [](const Discretization& D) { return D.grid.w; })
      .def_property_readonly("n_radial", [](const Discretization& D) { return D.n_radial(); })
      .def_readonly("n_theta", &Discretization::n_theta)
      .def_property_readonly("volume", [](const Discretization& D) { return volume(D.grid); })
      .def("laplacian",
           [](const Discretization& D, const Eigen::MatrixXd& u) {
             Field f = as_field(D, u);
             Field lap = D.laplacian(f);
             return Eigen::MatrixXd(D.physical(lap));
           },
           py::arg("u"))
      .def("mode_eigenvalues",
           [](const Discretization& D, int mode) {
             if (mode < 0 || mode > D.m_max())
               throw std::invalid_argument("mode: out of range");
             return Eigen::VectorXd(D.ops.mode(mode).evals);
           },
           py::arg("mode"));

  m.def("make_discretization",
        [](const SpindleGeometry& geom, int n_radial, double x_min, const std::string& grading,
           int n_theta) {
          return make_discretization(geom, n_radial, x_min, grading_from(grading), n_theta);
        },
        py::arg("geom"), py::arg("n_radial") = 64, py::arg("x_min") = 1e-3,
        py::arg("grading") = "log-collar", py::arg("n_theta") = 16);

  m.def("gamma_window",
        [](int n, double lambda1) {
          const GammaWindow w = gamma_window(n, lambda1);
          return py::make_tuple(w.lo, w.hi);
        },
        py::arg("n"), py::arg("lambda1"));

  m.def("indicial_report_json",
        [](int n, const std::string& cross_section, double alpha, double gamma, int truncation) {
          const IndicialReport rep =
              indicial_report(n, spectrum_from(cross_section, alpha, truncation), gamma);
          return report_to_json(rep);
        },
        py::arg("n"), py::arg("cross_section"), py::arg("alpha"), py::arg("gamma"),
        py::arg("truncation") = 8);

  m.def("make_initial",
        [](const Discretization& D, const std::string& kind, double amplitude, std::uint64_t seed,
           int mode, int j) {
          InitialSpec spec;
          spec.kind = kind_from(kind);
          spec.amplitude = amplitude;
          spec.seed = seed;
          spec.m = mode;
          spec.j = j;
          Field f = make_initial(D, spec);
          return Eigen::MatrixXd(D.physical(f));
        },
        py::arg("D"), py::arg("kind") = "random", py::arg("amplitude") = 0.1,
        py::arg("seed") = 12345, py::arg("mode") = 1, py::arg("j") = 1);

  m.def("energy",
        [](const Discretization& D, const Eigen::MatrixXd& u) {
          Field f = as_field(D, u);
          return energy(D, f);
        },
        py::arg("D"), py::arg("u"));

  m.def("mass",
        [](const Discretization& D, const Eigen::MatrixXd& u) {
          Field f = as_field(D, u);
          return mass(D, f);
        },
        py::arg("D"), py::arg("u"));

  m.def("mellin_norm",
        [](const Discretization& D, const Eigen::MatrixXd& u, int s, double gamma, double p,
           const std::string& cutoff) {
          NormRequest req;
          req.s = s;
          req.gamma = gamma;
          req.p = p;
          req.cutoff = cutoff_from(cutoff);
          Field f = as_field(D, u);
          return mellin_norm(D, f, req);
        },
        py::arg("D"), py::arg("u"), py::arg("s") = 0, py::arg("gamma") = 0.0, py::arg("p") = 2.0,
        py::arg("cutoff") = "smoothstep");

  m.def("tip_closure_residual",
        [](const Discretization& D, const Eigen::MatrixXd& u) {
          Field f = as_field(D, u);
          return tip_closure_residual(D, f);
        },
        py::arg("D"), py::arg("u"));

  m.def("fit_tip_exponent",
        [](const Discretization& D, const Eigen::MatrixXd& u, int mode, int tip, int lo, int hi) {
          Field f = as_field(D, u);
          const TipFit fit = fit_tip_exponent(D, f, mode, tip, lo, hi);
          py::dict out;
          out["ok"] = fit.ok;
          out["m"] = fit.m;
          out["tip"] = fit.tip;
          out["rho_hat"] = fit.rho_hat;
          out["r2"] = fit.r2;
          return out;
        },
        py::arg("D"), py::arg("u"), py::arg("mode"), py::arg("tip"), py::arg("lo") = 3,
        py::arg("hi") = 12);

  m.def("simulate",
        [](const Discretization& D, const Eigen::MatrixXd& u0, double dt, double t_end,
           double stabilization, int output_every, bool nonlinear) {
          Field u = as_field(D, u0);
          SolverConfig cfg;
          cfg.dt = dt;
          cfg.t_end = t_end;
          cfg.stabilization = stabilization;
          cfg.output_every = output_every;
          cfg.nonlinear = nonlinear;
          const DiagnosticsSeries series = run(D, u, cfg);
          py::dict out;
          out["step"] = series.step;
          out["t"] = series.t;
          out["energy"] = series.energy;
          out["mass"] = series.mass;
          out["grad_sq"] = series.grad_sq;
          out["u"] = Eigen::MatrixXd(D.physical(u));
          return out;
        },
        py::arg("D"), py::arg("u0"), py::arg("dt") = kReferenceDt, py::arg("t_end") = 1.0,
        py::arg("stabilization") = 2.0, py::arg("output_every") = 10, py::arg("nonlinear") = true);

  m.def("verify_suite_json", [] { return verify_report_json(verify_suite()); });

  m.attr("reference_dt") = kReferenceDt;
}
