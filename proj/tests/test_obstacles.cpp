#include <doctest.h>

#include <cmath>

#include "elastica/envelope.hpp"
#include "elastica/obstacles.hpp"
#include "elastica/specfun.hpp"

using namespace elastica;
using doctest::Approx;

TEST_CASE("cone obstacle shape") {
  const auto o = Obstacle::cone(1.2, 0.25);
  REQUIRE(o.kind() == ObstacleKind::cone);
  const double k = 1.2 / 0.25;
  CHECK(o.eval(0.5) == Approx(1.2));
  CHECK(o.eval(0.25) == Approx(0.0).scale(1.0));
  CHECK(o.eval(0.75) == Approx(0.0).scale(1.0));
  CHECK(o.eval(0.0) == Approx(1.2 - 0.5 * k));
  CHECK(o.eval(1.0) == Approx(o.eval(0.0)));
  CHECK(o.slope_right(0.1) == Approx(k));
  CHECK(o.slope_left(0.5) == Approx(k));
  CHECK(o.slope_right(0.5) == Approx(-k));
  CHECK(o.sup_value() == Approx(1.2));
  CHECK(o.slope_bound() == Approx(k));
  CHECK(o.cone_params()->slope() == Approx(k));
  const auto pts = o.check_points();
  for (double x : {0.25, 0.5, 0.75}) {
    CHECK(std::find_if(pts.begin(), pts.end(), [x](double p) { return std::abs(p - x) < 1e-15; }) != pts.end());
  }
  CHECK(is_admissible(o));
  CHECK_THROWS_AS(Obstacle::cone(-1.0, 0.25), std::invalid_argument);
  CHECK_THROWS_AS(Obstacle::cone(1.0, 0.5), std::invalid_argument);
}

TEST_CASE("piecewise linear and tabulated obstacles") {
  const auto pl = Obstacle::piecewise_linear({{0, -1}, {0.3, 0.5}, {0.6, 0.2}, {1, -0.5}});
  CHECK(pl.eval(0.15) == Approx(-0.25));
  CHECK(pl.slope_left(0.3) == Approx(5.0));
  CHECK(pl.slope_right(0.3) == Approx(-1.0));
  CHECK(pl.sup_value() == Approx(0.5));
  CHECK(pl.slope_bound() == Approx(5.0));
  CHECK(is_admissible(pl));

  const auto tab = Obstacle::tabulated({-1, 0.5, 1, 0.5, -1});
  CHECK(tab.eval(0.5) == Approx(1.0));
  CHECK(tab.eval(0.125) == Approx(-0.25));
  CHECK(tab.breakpoints().size() == 5);

  CHECK_THROWS_AS(Obstacle::piecewise_linear({{0, -1}, {0.5, 1}, {0.5, 0}, {1, -1}}), std::invalid_argument);
  CHECK_THROWS_AS(Obstacle::piecewise_linear({{0.1, -1}, {1, -1}}), std::invalid_argument);
  CHECK_THROWS_AS(Obstacle::tabulated({1.0}), std::invalid_argument);
}

TEST_CASE("admissibility diagnostics name the failing condition") {
  const auto above = Obstacle::piecewise_linear({{0, 0.1}, {0.5, 1}, {1, -1}});
  CHECK_FALSE(is_admissible(above));
  int failed = 0;
  for (const auto& d : admissibility_check(above)) {
    if (!d.passed) {
      ++failed;
      CHECK(d.name == "psi(0) < 0");
    }
  }
  CHECK(failed == 1);
  CHECK_FALSE(is_admissible(Obstacle::tabulated({-1, -0.5, -1})));
}

TEST_CASE("feasibility of graphs, curves and caps") {
  const auto o = Obstacle::cone(0.4, 0.25);
  const auto arch = SampledGraph::from_function([](double x) { return 2.0 * x * (1 - x); }, 64);
  const auto fa = feasible(arch, o);
  CHECK(fa.feasible);
  CHECK(fa.margin == Approx(0.1));
  CHECK(fa.worst_x == Approx(0.5));
  const auto low = SampledGraph::from_function([](double x) { return 1.2 * x * (1 - x); }, 64);
  CHECK_FALSE(feasible(low, o).feasible);
  CHECK(feasible(graph_to_curve(arch), o).feasible);

  // a chord can pass under the apex even when every node is above psi
  const PolyCurve coarse({{0, 0}, {0.45, 0.38}, {0.55, 0.38}, {1, 0}});
  CHECK_FALSE(feasible(coarse, o).feasible);
  CHECK(feasible(coarse, o).worst_x == Approx(0.5));

  const CapShape cs{0.3, 0.3, SampledGraph::from_function([](double x) { return 0.3 + 0.5 * x * (1 - x); }, 32), true, {}};
  CHECK(feasible(cs, o).feasible);
}

TEST_CASE("cone nonexistence verdict") {
  const double t = cone_threshold_sup();
  CHECK(cone_nonexistence_diagnostic({0.4, 0.25}).verdict == ConeVerdict::graph_minimizer_possible);
  CHECK(cone_nonexistence_diagnostic({1.2, 0.25}).verdict == ConeVerdict::graph_minimizer_impossible);
  const auto near = cone_nonexistence_diagnostic({t + 5e-5, 0.25});
  CHECK(near.verdict == ConeVerdict::graph_minimizer_impossible);
  CHECK(near.margin_warning);
  CHECK_FALSE(cone_nonexistence_diagnostic({1.2, 0.25}).margin_warning);
  CHECK(near.threshold == Approx(0.834626).epsilon(1e-4));
}
