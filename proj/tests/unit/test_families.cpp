#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "vadb/error.hpp"
#include "vadb/families.hpp"
#include "vadb/geometry.hpp"

using namespace vadb;

namespace {
constexpr double kPi = std::numbers::pi;

FamilyParams params(ProfileId id, int j) {
  FamilyParams p;
  p.family = id;
  p.j = j;
  return p;
}
}  // namespace

TEST_CASE("profile names round trip") {
  for (ProfileId id : all_profiles()) CHECK(parse_profile(profile_name(id)) == id);
  CHECK_THROWS_AS(parse_profile("nope"), Error);
  CHECK(parse_flat_domain("torus") == FlatDomain::torus);
}

TEST_CASE("bump shapes hit their extreme values") {
  CHECK(cinch_bump(0.5, 0.0) == 0.5);
  CHECK(cinch_bump(0.5, 1.0) == 1.0);
  CHECK(taxi_bump(0.0) == 1.0);
  CHECK(taxi_bump(-1.0) == 5.0);
  CHECK(ridge_bump(1.5, 0.0) == 1.5);
  CHECK(smoothstep(0.5) == 0.5);
  CHECK(bubble_neck(8, 1.0, 0.125) == doctest::Approx(8.0));
  CHECK(bubble_neck(8, 2.0, 0.125) == doctest::Approx(1.0));
}

TEST_CASE("warping profiles are continuous at their branch points") {
  for (int j : {4, 16, 32}) {
    const FamilyParams s = params(ProfileId::spline_torus, j);
    const double inner = std::pow(j, -s.eta);
    for (double r : {inner, 1.0 / j, 2.0 / j}) {
      const double lo = warping_profile(ProfileId::spline_torus, s, r * (1 - 1e-9));
      const double hi = warping_profile(ProfileId::spline_torus, s, r * (1 + 1e-9));
      CHECK(lo == doctest::Approx(hi).epsilon(1e-6));
    }
    const FamilyParams b = params(ProfileId::bubble_torus, j);
    CHECK(warping_profile(ProfileId::bubble_torus, b, 1.0 / j) ==
          doctest::Approx(warping_profile(ProfileId::bubble_torus, b, 1.0 / j * (1 + 1e-9))).epsilon(1e-6));
  }
}

TEST_CASE("warping profile domain errors") {
  const FamilyParams p = params(ProfileId::single_ridge, 4);
  try {
    warping_profile(ProfileId::single_ridge, p, 4.0);
    FAIL("expected out-of-domain");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::out_of_domain);
  }
  CHECK_THROWS_AS(warping_profile(ProfileId::pmt_graph, params(ProfileId::pmt_graph, 1), 0.5), Error);
  CHECK_THROWS_AS(family_spec(params(ProfileId::taxi_finsler, kMaxTaxiJ + 1), family_domain(params(ProfileId::taxi_finsler, 1))),
                  Error);
}

TEST_CASE("Schwarzschild height has the closed-form slope") {
  for (int n : {3, 4}) {
    const double m = 0.05;
    for (double rho : {0.4, 0.7, 1.0}) {
      const double h = 1e-6;
      const double d = (schwarzschild_height(n, m, rho + h) - schwarzschild_height(n, m, rho - h)) / (2 * h);
      CHECK(d * d == doctest::Approx(schwarzschild_slope_sq(n, m, rho)).epsilon(1e-6));
    }
  }
  CHECK(schwarzschild_inner_radius(3, 0.01) == doctest::Approx(0.02));
  CHECK(schwarzschild_inner_radius(4, 0.02) == doctest::Approx(0.2));
  CHECK_THROWS_AS(schwarzschild_inner_radius(5, 0.1), Error);
}

TEST_CASE("bubble neck integral condition decays with j") {
  double prev = 1e300;
  for (int j : {4, 8, 16, 32, 64}) {
    const double c = bubble_integral_condition(j, 2, 0.125);
    CHECK(c < prev);
    prev = c;
  }
  CHECK(prev < 0.05);
}

TEST_CASE("declared dominance holds pointwise") {
  for (ProfileId id : all_profiles()) {
    if (id == ProfileId::pmt_graph) continue;
    const FamilyParams p = params(id, 4);
    const ParamDomain dom = family_domain(p);
    auto mesh = std::make_shared<const Mesh>(build_grid_mesh(dom, {32, 32}, 2));
    const MetricField g0 = sample_metric(background_spec(p, dom), mesh);
    const MetricField gj = sample_metric(family_spec(p, dom), mesh);
    const FamilyTraits t = family_traits(id);
    if (t.dominating) CHECK(dominance_check(g0, gj, 1e-12).passed());
    if (t.dominated) CHECK(dominance_check(gj, g0, 1e-12).passed());
    if (t.dominated && !t.dominating) {
      const double h0 = p.h0_or_default();
      CHECK(dominance_check(g0, gj, 1e-12).min_eigenvalue == doctest::Approx(h0 * h0 - 1.0));
    }
  }
}

TEST_CASE("sample_metric rejects a foreign mesh") {
  const FamilyParams p = params(ProfileId::single_ridge, 4);
  auto mesh = std::make_shared<const Mesh>(
      build_grid_mesh(ParamDomain::rectangle({{0, 1}, {0, 1}}, {false, false}), {8, 8}, 1));
  try {
    sample_metric(family_spec(p, family_domain(p)), mesh);
    FAIL("expected domain-mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::domain_mismatch);
  }
}

TEST_CASE("flat domains have their Lebesgue measures") {
  FamilyParams p;
  p.flat_domain = FlatDomain::cylinder;
  CHECK(family_domain(p).lebesgue_measure() == doctest::Approx(4 * kPi * kPi));
  p.flat_domain = FlatDomain::square;
  CHECK(family_domain(p).lebesgue_measure() == doctest::Approx(1.0));
}
