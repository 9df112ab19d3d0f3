// indicial.cpp
#include "chspindle/indicial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace chspindle {

namespace {

constexpr double kTol = 1e-12;

void append_family(std::vector<IndicialRoot>& out, double centre, double half_width_sq,
                   double lambda, bool shifted) {
  const std::complex<double> sq = std::sqrt(std::complex<double>(half_width_sq, 0.0));
  if (std::abs(sq) <= 1e-14 * std::max(1.0, std::abs(centre))) {
    out.push_back({{centre, 0.0}, lambda, +1, shifted, 2});
    return;
  }
  out.push_back({std::complex<double>(centre, 0.0) + sq, lambda, +1, shifted, 1});
  out.push_back({std::complex<double>(centre, 0.0) - sq, lambda, -1, shifted, 1});
}

void sort_roots(std::vector<IndicialRoot>& r) {
  std::sort(r.begin(), r.end(), [](const IndicialRoot& a, const IndicialRoot& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    if (a.value.imag() != b.value.imag()) return a.value.imag() < b.value.imag();
    return a.shifted < b.shifted;
  });
}

}  // namespace

std::vector<IndicialRoot> q_delta(int n, const CrossSectionSpectrum& spec) {
  if (n < 1) throw std::invalid_argument("q_delta: n must be >= 1");
  spec.validate();
  const double c = 0.5 * (n - 1);
  std::vector<IndicialRoot> out;
  for (const auto& e : spec.entries) append_family(out, c, c * c - e.lambda, e.lambda, false);
  sort_roots(out);
  return out;
}

std::vector<IndicialRoot> q_delta_squared(int n, const CrossSectionSpectrum& spec) {
  if (n < 1) throw std::invalid_argument("q_delta_squared: n must be >= 1");
  spec.validate();
  const double c = 0.5 * (n - 1);
  std::vector<IndicialRoot> out;
  for (const auto& e : spec.entries) {
    append_family(out, c, c * c - e.lambda, e.lambda, false);
    append_family(out, c - 2.0, c * c - e.lambda, e.lambda, true);
  }
  sort_roots(out);
  return out;
}

GammaWindow gamma_window(int n, double lambda1) {
  if (n < 1) throw std::invalid_argument("gamma_window: n must be >= 1");
  if (!(lambda1 < 0.0)) throw std::invalid_argument("gamma_window: lambda1 must be negative");
  const double c = 0.5 * (n - 1);
  GammaWindow w;
  w.lo = 0.5 * (n - 3);
  w.hi = std::min(-1.0 + std::sqrt(c * c - lambda1), 0.5 * (n + 1));
  return w;
}

bool minimal_domain_clean(int n, const CrossSectionSpectrum& spec, double gamma) {
  const double line = 0.5 * (n - 3) - gamma;
  for (const auto& r : q_delta(n, spec))
    if (std::abs(r.value.real() - line) <= kTol) return false;
  return true;
}

std::vector<AsymptoticTerm> asymptotics_space(int n, const CrossSectionSpectrum& spec, double gamma) {
  const GammaWindow w = gamma_window(n, spec.lambda1());
  if (!w.contains(gamma)) throw std::invalid_argument("asymptotics_space: gamma outside admissible window");
  const double lo = 0.5 * (n - 7) - gamma;
  const double hi = 0.5 * (n - 3) - gamma;
  std::vector<AsymptoticTerm> terms;
  for (const auto& r : q_delta_squared(n, spec)) {
    const double re = r.value.real();
    if (re < lo - kTol || re >= hi - kTol) continue;
    bool seen = false;
    for (const auto& t : terms)
      if (std::abs(t.rho.real() - re) <= kTol && std::abs(t.rho.imag() - r.value.imag()) <= kTol) {
        seen = true;
        break;
      }
    if (!seen) terms.push_back({r.value, 3});
  }
  std::sort(terms.begin(), terms.end(),
            [](const AsymptoticTerm& a, const AsymptoticTerm& b) { return a.rho.real() > b.rho.real(); });
  return terms;
}

Delta0 delta0(const std::vector<AsymptoticTerm>& terms, int n, double gamma) {
  double sup = 2.0;
  for (const auto& t : terms)
    sup = std::min(sup, 0.5 * (n + 1) - t.rho.real() - gamma - 2.0);
  if (!(sup > 0.0)) throw std::invalid_argument("delta0: no admissible flatness margin");
  return {sup, 0.9 * sup};
}

IndicialReport indicial_report(int n, const CrossSectionSpectrum& spec, double gamma) {
  spec.validate();
  IndicialReport rep;
  rep.n = n;
  rep.gamma = gamma;
  rep.spectrum = spec;
  rep.window = gamma_window(n, spec.lambda1());
  if (!rep.window.contains(gamma)) throw std::invalid_argument("indicial_report: gamma outside admissible window");

  // The truncated spectrum must cover every root with real part within 1 of
  // the asymptotics strip; the most negative eigenvalue decides.
  const double strip_lo = 0.5 * (n - 7) - gamma;
  const double strip_hi = 0.5 * (n - 3) - gamma;
  const double c = 0.5 * (n - 1);
  const double lam_last = spec.entries.back().lambda;
  const double reach = std::sqrt(c * c - lam_last);
  if (spec.entries.size() > 1 &&
      !(c - 2.0 - reach < strip_lo - 1.0 && c + reach > strip_hi + 1.0))
    throw std::invalid_argument("indicial_report: spectrum truncation does not cover the asymptotics strip");

  rep.q_delta = q_delta(n, spec);
  rep.q_delta2 = q_delta_squared(n, spec);
  rep.domain_clean = minimal_domain_clean(n, spec, gamma);
  rep.terms = asymptotics_space(n, spec, gamma);
  rep.d0 = delta0(rep.terms, n, gamma);
  return rep;
}

std::string report_to_json(const IndicialReport& r) {
  using json = nlohmann::ordered_json;
  auto roots = [](const std::vector<IndicialRoot>& v) {
    json arr = json::array();
    for (const auto& root : v)
      arr.push_back({{"re", root.value.real()},
                     {"im", root.value.imag()},
                     {"lambda", root.lambda},
                     {"branch", root.branch},
                     {"shifted", root.shifted},
                     {"multiplicity", root.multiplicity}});
    return arr;
  };
  json j;
  j["n"] = r.n;
  j["gamma"] = r.gamma;
  j["cross_section"] = r.spectrum.label;
  j["q_delta"] = roots(r.q_delta);
  j["q_delta2"] = roots(r.q_delta2);
  j["gamma_window"] = {r.window.lo, r.window.hi};
  j["minimal_domain_clean"] = r.domain_clean;
  json terms = json::array();
  for (const auto& t : r.terms)
    terms.push_back({{"rho_re", t.rho.real()}, {"rho_im", t.rho.imag()}, {"max_log_power", t.max_log_power}});
  j["terms"] = terms;
  j["delta0_sup"] = r.d0.sup;
  j["delta0_chosen"] = r.d0.chosen;
  return j.dump(2);
}

}  // namespace chspindle
