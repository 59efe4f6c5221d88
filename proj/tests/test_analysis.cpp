#include <doctest.h>

#include <cmath>

#include "elastica/analysis.hpp"
#include "oracles.hpp"

using namespace elastica;
using doctest::Approx;

namespace {

double fx(const std::string& name) { return oracle::fixture(name).value; }

// symmetric graph from a left half whose slope vanishes at x = 1/2
SampledGraph mirrored(const ConeCandidate& c) {
  const std::size_t m = c.height.size();
  std::vector<double> u(2 * m - 1);
  for (std::size_t j = 0; j < m; ++j) {
    u[j] = c.height[j];
    u[2 * m - 2 - j] = c.height[j];
  }
  return SampledGraph(std::move(u));
}

}  // namespace

TEST_CASE("comparison profile") {
  const double c0 = fx("c0");
  CHECK(comparison_profile(0.0) == Approx(0.0).scale(1.0));
  CHECK(comparison_profile(1.0) == Approx(0.0).scale(1.0));
  CHECK(comparison_profile(0.5) == Approx(2.0 / c0).epsilon(1e-12));
  CHECK(comparison_profile(0.3) == Approx(comparison_profile(0.7)).epsilon(1e-12));
  // vertical tangent at the ends: U_0 ~ x^(1/3)
  const double r = comparison_profile(4e-8) / comparison_profile(1e-8);
  CHECK(r == Approx(std::cbrt(4.0)).epsilon(1e-3));
  CHECK(comparison_top_length() == Approx(fx("top_length")).epsilon(1e-9));
}

TEST_CASE("comparison curve: energy c0^2 and length 2S + L_top") {
  const double c0 = fx("c0");
  for (double S : {0.0, 0.5, 2.0}) {
    const auto c = comparison_polyline(S, 2048);
    const auto e = curve_energy(c);
    CHECK(e.bending == Approx(c0 * c0).epsilon(1e-4));
    CHECK(c.length() == Approx(2 * S + fx("top_length")).epsilon(1e-5));
    CHECK(speed_deviation(c) < 1e-5);
    const auto cs = comparison_curve(S, 256);
    CHECK(cs.h_left == Approx(S));
    CHECK(cs.h_right == Approx(S));
    CHECK(cs.top[128] == Approx(S + 2.0 / c0));
    CHECK(cs.concave_certified);
  }
  CHECK_THROWS_AS(comparison_polyline(-1.0, 256), std::invalid_argument);
  CHECK_THROWS_AS(comparison_curve(0.5, 32), std::invalid_argument);
}

TEST_CASE("shooting integrals") {
  CHECK(shooting_f0(0.0, 2.0) == Approx(fx("shooting_f0_0_m2")).epsilon(1e-9));
  CHECK(shooting_f0(2.0, 2.0) == 0.0);
  CHECK(shooting_peak_formula(2.0, -1.0) == Approx(fx("shooting_peak_m2_c1")).epsilon(1e-9));
  CHECK(shooting_minimal_c0(2.0) == Approx(-2.0 * std::pow(fx("shooting_f0_0_m2"), 2)).epsilon(1e-9));
}

TEST_CASE("cone shooting: straight line when C0 = 0") {
  const auto c = cone_shooting(1.5, 0.0, 64);
  REQUIRE(c.x.size() == 65);
  for (std::size_t j = 0; j < c.x.size(); ++j) {
    CHECK(c.slope[j] == Approx(1.5));
    CHECK(c.height[j] == Approx(1.5 * c.x[j]).scale(1.0));
  }
  CHECK_FALSE(c.peak_x.has_value());
}

TEST_CASE("cone shooting: peak location and height match the integrals") {
  // C0 = -4: peak at F0(0)/sqrt(8), height = formula
  const auto c = cone_shooting(2.0, -4.0, 4096);
  REQUIRE(c.peak_x.has_value());
  CHECK(*c.peak_x == Approx(fx("shooting_f0_0_m2") / std::sqrt(8.0)).epsilon(1e-6));
  CHECK(*c.peak_height == Approx(fx("shooting_peak_m2_c1") / 2.0).epsilon(1e-6));
  CHECK(c.ode_residual < 1e-4);
  CHECK(c.slope.front() == Approx(2.0));
  for (std::size_t j = 1; j < c.slope.size(); ++j) CHECK(c.slope[j] < c.slope[j - 1]);  // concave
}

TEST_CASE("cone shooting: divergence and parameter errors") {
  CHECK_THROWS_AS(cone_shooting(1.0, -100.0, 256), std::domain_error);
  CHECK_THROWS_AS(cone_shooting(-1.0, -1.0, 256), std::invalid_argument);
  CHECK_THROWS_AS(cone_shooting(1.0, 1.0, 256), std::invalid_argument);
  CHECK_THROWS_AS(cone_shooting(1.0, -1.0, 4), std::invalid_argument);
}

TEST_CASE("right half mirrors the left half") {
  const auto l = cone_shooting(2.0, -1.0, 256);
  const auto r = cone_shooting_right(-2.0, 1.0, 256);
  const std::size_t m = l.x.size();
  REQUIRE(r.x.size() == m);
  CHECK(r.x.back() == Approx(1.0));
  CHECK(r.height.back() == Approx(0.0).scale(1.0));
  for (std::size_t j = 0; j < m; ++j) {
    CHECK(r.height[j] == Approx(l.height[m - 1 - j]).scale(1.0));
    CHECK(r.slope[j] == Approx(-l.slope[m - 1 - j]).scale(1.0));
  }
}

TEST_CASE("Euler-Lagrange residuals of an exact shooting solution") {
  // left half with u'(1/2) = 0 glued to its mirror image: the Lagrange
  // quantity is constant on each side of the apex
  const double m0 = 1.0;
  const double C0 = shooting_minimal_c0(m0);
  const auto half = cone_shooting(m0, C0, 1024);
  const auto g = mirrored(half);
  const double apex = g[1024];
  const auto o = Obstacle::piecewise_linear({{0, -1}, {0.5, apex}, {1, -1}});
  const auto el = el_residuals(g, o, 0.0);
  REQUIRE(el.contact_nodes.size() >= 1);
  for (int k : el.contact_nodes) CHECK(std::abs(k - 1024) <= 1);
  REQUIRE(el.interval_constants.size() == 2);
  CHECK(el.interval_constants[0] == Approx(-el.interval_constants[1]).epsilon(1e-3));
  CHECK(el.piecewise_const_dev < 1e-2);
  CHECK(std::abs(el.v_left) < 1e-2);
  CHECK(std::abs(el.v_right) < 1e-2);
}

TEST_CASE("length bounds") {
  const auto& prof = g_profile();
  const auto o = Obstacle::cone(0.4, 0.25);
  CHECK(length_bound_touching(o) == Approx(2 * (0.4 + 1.6) + 1));
  CHECK(length_bound_one_sided(0.0) == Approx(1.0));
  CHECK(length_bound_one_sided(-0.75) == Approx(2.0));
  const double c2 = prof.c0() * prof.c0();
  const auto b = length_bound_main(4.0, prof, o);
  CHECK(b.value >= b.graph_part);
  CHECK(b.value >= b.touching_part);
  CHECK_FALSE(b.near_degenerate);
  // the graph part grows without bound as alpha approaches c0^2
  CHECK(length_bound_main(c2 - 1e-3, prof, o).graph_part > length_bound_main(c2 - 1e-1, prof, o).graph_part);
  CHECK_THROWS_AS(length_bound_main(c2, prof, o), RangeError);
  CHECK(cone_height_bound(2.0) == Approx(cone_threshold_ratio(2.0)));
}
