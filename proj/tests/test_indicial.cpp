#include <algorithm>
#include <cmath>
#include <set>

#include "chspindle/indicial.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace chspindle;

namespace {

std::multiset<double> real_parts(const std::vector<IndicialRoot>& roots) {
  std::multiset<double> out;
  for (const auto& r : roots)
    for (int q = 0; q < r.multiplicity; ++q) out.insert(r.value.real());
  return out;
}

}  // namespace

TEST_CASE("gamma window closed forms") {
  GammaWindow w = gamma_window(1, -1.0);
  CHECK(w.lo == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(w.hi == doctest::Approx(0.0).epsilon(1e-15));

  w = gamma_window(1, -1.5625);
  CHECK(w.lo == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(w.hi == doctest::Approx(0.25).epsilon(1e-15));

  w = gamma_window(2, -2.0);
  CHECK(w.lo == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(w.hi == doctest::Approx(0.5).epsilon(1e-15));

  CHECK(w.contains(0.0));
  CHECK(!w.contains(0.5));
  CHECK(!w.contains(-0.5));
  CHECK_THROWS_AS(gamma_window(1, 0.0), std::invalid_argument);
}

TEST_CASE("laplacian roots on the unit-sphere cross section") {
  const auto roots = q_delta(2, CrossSectionSpectrum::sphere(10));
  std::multiset<double> got = real_parts(roots);
  for (const auto& r : roots) CHECK(r.value.imag() == 0.0);
  for (int j = 0; j <= 10; ++j) {
    bool neg = false, pos = false;
    for (double v : got) {
      if (std::abs(v - double(-j)) <= 1e-12) neg = true;
      if (std::abs(v - double(j + 1)) <= 1e-12) pos = true;
    }
    CHECK(neg);
    CHECK(pos);
  }
}

TEST_CASE("laplacian roots on the circle, coincident branches merge") {
  const auto roots = q_delta(1, CrossSectionSpectrum::circle(1.0, 3));
  // k = 0 gives the double root at 0; k = 1..3 give +/- k.
  std::multiset<double> got = real_parts(roots);
  const std::multiset<double> want = {-3, -2, -1, 0, 0, 1, 2, 3};
  REQUIRE(got.size() == want.size());
  auto it = want.begin();
  for (double v : got) CHECK(v == doctest::Approx(*it++).epsilon(1e-14));

  for (const auto& r : roots)
    if (r.value.real() == 0.0) CHECK(r.multiplicity == 2);
}

TEST_CASE("bi-laplacian roots are the union with the shifted family") {
  const auto roots = q_delta_squared(1, CrossSectionSpectrum::circle(0.8, 1));
  // Plain: 0 (double), +/-1.25. Shifted by -2: -2 (double), -0.75, -3.25.
  std::multiset<double> got = real_parts(roots);
  const std::multiset<double> want = {-3.25, -2, -2, -1.25, -0.75, 0, 0, 1.25};
  REQUIRE(got.size() == want.size());
  auto it = want.begin();
  for (double v : got) CHECK(v == doctest::Approx(*it++).epsilon(1e-12));

  // Sorted by real part.
  for (std::size_t i = 1; i < roots.size(); ++i)
    CHECK(roots[i - 1].value.real() <= roots[i].value.real() + 1e-15);
}

TEST_CASE("minimal domain cleanness against the shifted line") {
  const auto spec = CrossSectionSpectrum::circle(1.0, 4);
  CHECK(minimal_domain_clean(1, spec, -0.5));
  CHECK(!minimal_domain_clean(1, spec, -1.0));   // line at 0 hits the double root
  CHECK(!minimal_domain_clean(1, spec, 0.0));    // line at -1 hits k = 1
  CHECK(!minimal_domain_clean(1, spec, -1.0 + 1e-13));  // within tolerance
  CHECK(minimal_domain_clean(1, spec, -1.0 + 1e-9));
}

TEST_CASE("asymptotics strip membership") {
  // n = 1, alpha = 1, gamma = -0.5: strip [-2.5, -0.5), terms at -1 and -2.
  const auto spec = CrossSectionSpectrum::circle(1.0, 6);
  const auto terms = asymptotics_space(1, spec, -0.5);
  REQUIRE(terms.size() == 2);
  CHECK(terms[0].rho.real() == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(terms[1].rho.real() == doctest::Approx(-2.0).epsilon(1e-14));
  for (const auto& t : terms) {
    CHECK(t.max_log_power >= 0);
    CHECK(t.max_log_power <= 3);
  }
  CHECK_THROWS_AS(asymptotics_space(1, spec, 0.5), std::invalid_argument);
}

TEST_CASE("asymptotics strip half-open boundary") {
  // n = 1, alpha = 0.8, gamma = 0.2: strip [-3.2, -1.2). The root at -3.25
  // falls just outside; -1.25, -2, -2.5 are inside.
  const auto spec = CrossSectionSpectrum::circle(0.8, 6);
  const auto terms = asymptotics_space(1, spec, 0.2);
  REQUIRE(terms.size() == 3);
  CHECK(terms[0].rho.real() == doctest::Approx(-1.25).epsilon(1e-12));
  CHECK(terms[1].rho.real() == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(terms[2].rho.real() == doctest::Approx(-2.5).epsilon(1e-12));
}

TEST_CASE("flatness margin ledger") {
  const auto spec = CrossSectionSpectrum::circle(1.0, 6);
  const Delta0 d = delta0(asymptotics_space(1, spec, -0.5), 1, -0.5);
  CHECK(d.sup == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(d.chosen == doctest::Approx(0.45).epsilon(1e-14));

  const auto spec08 = CrossSectionSpectrum::circle(0.8, 6);
  const Delta0 d2 = delta0(asymptotics_space(1, spec08, 0.2), 1, 0.2);
  CHECK(d2.sup == doctest::Approx(0.05).epsilon(1e-12));

  // Empty term set: the margin caps at 2.
  const Delta0 d3 = delta0({}, 1, -0.5);
  CHECK(d3.sup == 2.0);
  CHECK(d3.chosen == doctest::Approx(1.8).epsilon(1e-15));
}

TEST_CASE("indicial report composes and serializes") {
  const auto spec = CrossSectionSpectrum::circle(1.0, 6);
  const IndicialReport rep = indicial_report(1, spec, -0.5);
  CHECK(rep.domain_clean);
  CHECK(rep.terms.size() == 2);
  CHECK(rep.d0.sup == doctest::Approx(0.5).epsilon(1e-14));

  const auto j = nlohmann::json::parse(report_to_json(rep));
  CHECK(j["n"] == 1);
  CHECK(j["gamma"] == -0.5);
  CHECK(j["gamma_window"][0] == -1.0);
  CHECK(j["gamma_window"][1] == 0.0);
  CHECK(j["minimal_domain_clean"] == true);
  CHECK(j["terms"].size() == 2);
  CHECK(j["delta0_sup"] == 0.5);

  // Truncation too small to cover the strip is refused.
  CHECK_THROWS_AS(indicial_report(1, CrossSectionSpectrum::circle(1.0, 1), -0.5),
                  std::invalid_argument);
}
