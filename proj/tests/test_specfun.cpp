#include <doctest.h>

#include <cmath>
#include <random>

#include "elastica/specfun.hpp"
#include "oracles.hpp"

using namespace elastica;
using doctest::Approx;

namespace {

void check_fixture(double value, const std::string& name) {
  const auto& f = oracle::fixture(name);
  INFO(name << ": " << value << " vs " << f.value);
  CHECK(std::abs(value - f.value) <= f.tolerance);
}

}  // namespace

TEST_CASE("gamma matches the standard library and is exact at integers") {
  for (double x : {0.1, 0.5, 1.0, 1.75, 3.3, 7.0, 12.5, 40.2, -0.5, -1.5, -3.25}) {
    const double ref = std::tgamma(x);
    CHECK(gamma_fn(x) == Approx(ref).epsilon(1e-13));
    CHECK(rgamma(x) == Approx(1.0 / ref).epsilon(1e-13));
  }
  double fact = 1.0;
  for (int k = 1; k <= 15; ++k) {
    CHECK(gamma_fn(k) == Approx(fact).epsilon(1e-14));
    fact *= k;
  }
}

TEST_CASE("gamma poles") {
  for (double x : {0.0, -1.0, -2.0, -7.0}) {
    CHECK_THROWS_AS(gamma_fn(x), PoleError);
    CHECK(rgamma(x) == 0.0);
  }
}

TEST_CASE("hyp2f1 agrees with a long double series inside the unit disc") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> par(-2.5, 2.5), cpar(0.3, 3.0), zd(-0.6, 0.6);
  for (int t = 0; t < 300; ++t) {
    const double a = par(rng), b = par(rng), c = cpar(rng), z = zd(rng);
    const double ref = static_cast<double>(oracle::hyp2f1_direct(a, b, c, z));
    INFO("a=" << a << " b=" << b << " c=" << c << " z=" << z);
    CHECK(hyp2f1({a, b, c, z}) == Approx(ref).epsilon(1e-11).scale(1.0));
    CHECK(hyp2f1_series({a, b, c, z}) == Approx(ref).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("hyp2f1 on the negative axis and near z = 1") {
  check_fixture(hyp2f1({1.0, 0.5, 0.75, -1.0}), "hyp_1_half_3q_m1");
  check_fixture(hyp2f1({0.5, 1.0, 0.75, -2.5}), "hyp_half_1_3q_m2p5");
  check_fixture(hyp2f1({0.5, 0.25, 2.0, 1.0 - 1e-6}), "hyp_half_quarter_2_near1");
}

TEST_CASE("hyp2f1 domain errors") {
  CHECK_THROWS_AS(hyp2f1({0.5, 0.5, 1.0, 1.0}), RangeError);
  CHECK_THROWS_AS(hyp2f1({0.5, 0.5, -2.0, 0.3}), PoleError);
  CHECK_THROWS_AS(hyp2f1_series({0.5, 0.5, 1.0, -1.5}), RangeError);
  CHECK_THROWS_AS(hyp2f1_series({0.5, 0.5, 1.5, 0.999999}, 50), ConvergenceError);
}

TEST_CASE("Pfaff transform leaves the value unchanged") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> par(-2.0, 2.0), cpar(0.4, 3.0), zd(-4.0, 0.9);
  for (int t = 0; t < 200; ++t) {
    const Hyp2F1Params p{par(rng), par(rng), cpar(rng), zd(rng)};
    const PfaffResult r = pfaff_transform(p);
    CHECK(r.params.b == Approx(p.c - p.b));
    CHECK(r.prefactor == Approx(std::pow(1.0 - p.z, -p.a)));
    const double lhs = hyp2f1(p);
    CHECK(r.prefactor * hyp2f1(r.params) == Approx(lhs).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("quadrature: smooth integrands against Simpson") {
  auto f = [](double t) { return std::exp(-t) * std::cos(3 * t); };
  const double ref = oracle::simpson(f, 0.0, 2.0, 4000);
  CHECK(integrate(f, 0.0, 2.0) == Approx(ref).epsilon(1e-12));
  const auto r = integrate_detailed(f, 0.0, 2.0);
  CHECK(r.error <= 1e-12);
  CHECK(r.panels >= 8);
}

TEST_CASE("quadrature: inverse square root endpoints") {
  for (const char* tag : {"0.25", "1.0", "4.0"}) {
    const double A = std::stod(tag);
    QuadratureSpec s;
    s.singular_right = true;
    const double i1 = integrate(
        [A](double t) { return std::pow(A - t, -0.5) * std::pow(1 + t * t, -1.25); }, 0.0, A, s);
    const double i2 = integrate(
        [A](double t) { return t * std::pow(A - t, -0.5) * std::pow(1 + t * t, -1.25); }, 0.0, A, s);
    check_fixture(i1, std::string("sqrt_weight_int_A") + tag);
    check_fixture(i2, std::string("sqrt_weight_moment_A") + tag);
  }
  QuadratureSpec left;
  left.singular_left = true;
  CHECK(integrate([](double t) { return 1.0 / std::sqrt(t); }, 0.0, 4.0, left) == Approx(4.0).epsilon(1e-12));
}

TEST_CASE("quadrature reports failure with its best estimate") {
  QuadratureSpec s;
  s.max_panels = 16;
  s.abs_tol = 1e-15;
  s.rel_tol = 1e-15;
  try {
    integrate([](double t) { return std::sin(1.0 / (t + 1e-3)); }, 0.0, 1.0, s);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(std::isfinite(e.estimate()));
    CHECK(e.error() > 0.0);
  }
  CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0, 1, QuadratureSpec{0}), std::invalid_argument);
}

TEST_CASE("G profile and c0") {
  check_fixture(compute_c0(), "c0");
  check_fixture(g_profile().c0(), "c0");
  CHECK(compute_c0_truncated(1e4) == Approx(compute_c0()).epsilon(1e-9));
  check_fixture(g_of(1.0), "g_of_1");
  check_fixture(g_of(3.0), "g_of_3");
  CHECK(g_of(-3.0) == Approx(-g_of(3.0)));
  CHECK(g_profile().half() == Approx(g_profile().c0() / 2));
  for (double x : {0.05, 0.7, 2.0, 9.0}) {
    CHECK(g_of(x) == Approx(oracle::g_simpson(x)).epsilon(1e-10));
  }
}

TEST_CASE("G inverse round trip and range") {
  const double half = g_profile().half();
  for (double y : {-0.99 * half, -0.3, 0.0, 0.1, 0.9, 0.999 * half}) {
    CHECK(g_of(g_inv(y)) == Approx(y).epsilon(1e-11).scale(1.0));
  }
  CHECK_THROWS_AS(g_inv(half), RangeError);
  CHECK_THROWS_AS(g_inv(-half - 0.1), RangeError);
}

TEST_CASE("threshold ratio: hypergeometric and quadrature routes") {
  for (const char* tag : {"0.5", "1", "5", "20"}) {
    const double A = std::stod(tag);
    check_fixture(cone_threshold_ratio(A), std::string("ratio_A") + tag);
    CHECK(cone_threshold_ratio_quadrature(A) == Approx(cone_threshold_ratio(A)).epsilon(1e-8));
  }
  check_fixture(cone_threshold_limit(), "ratio_limit");
  CHECK_THROWS_AS(cone_threshold_ratio(0.0), std::invalid_argument);
}

TEST_CASE("threshold sweep: bounded by A/2, monotone, serial equals parallel") {
  SweepOptions opt;
  opt.points = 120;
  opt.parallel = true;
  const auto par = cone_threshold_sweep(opt);
  opt.parallel = false;
  const auto ser = cone_threshold_sweep(opt);
  REQUIRE(par.A.size() == 120);
  CHECK(par.ratio == ser.ratio);
  CHECK(par.monotone);
  for (std::size_t i = 0; i < par.A.size(); ++i) CHECK(par.ratio[i] <= par.A[i] / 2);
  CHECK(std::abs(par.sup - 0.834626) <= 1e-4);
  CHECK(par.sup >= par.sweep_max);
  SweepOptions bad;
  bad.a_min = 2;
  bad.a_max = 1;
  CHECK_THROWS_AS(cone_threshold_sweep(bad), std::invalid_argument);
}
