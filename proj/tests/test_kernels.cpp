#include <doctest.h>

#include <cmath>
#include <cstring>

#include "elastica/analysis.hpp"
#include "elastica/kernels.hpp"
#include "elastica/verify.hpp"
#include "oracles.hpp"

using namespace elastica;
using doctest::Approx;

namespace {

std::vector<Vec2> noisy_state(Rng& rng, int n, double S) {
  const auto base = comparison_polyline(S, n);
  std::vector<Vec2> p(base.points().begin(), base.points().end());
  for (int i = 1; i < n; ++i) {
    p[i].x += uniform(rng, -1e-4, 1e-4);
    p[i].y += uniform(rng, -1e-3, 1e-3);
  }
  return p;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("serial and parallel kernels agree bit for bit") {
  Rng rng(21);
  const auto o = Obstacle::cone(1.5, 0.25);
  PenaltyWeights w;
  w.epsilon = 0.1;
  for (int t = 0; t < 10; ++t) {
    const auto p = noisy_state(rng, 257 + 64 * t, 0.3 * (t % 3));
    std::vector<double> gs, gp;
    const auto s = objective_kernel(p, o, w, &gs, Exec::serial);
    const auto q = objective_kernel(p, o, w, &gp, Exec::parallel);
    CHECK(same_bits(s.total, q.total));
    CHECK(same_bits(s.bending, q.bending));
    CHECK(same_bits(s.obstacle, q.obstacle));
    CHECK(same_bits(s.speed, q.speed));
    REQUIRE(gs.size() == gp.size());
    bool all = true;
    for (std::size_t i = 0; i < gs.size(); ++i) all = all && same_bits(gs[i], gp[i]);
    CHECK(all);
  }
}

TEST_CASE("objective parts add up and vanish where they should") {
  const auto c = comparison_polyline(0.0, 512);
  const auto o = Obstacle::cone(0.4, 0.25);
  PenaltyWeights w;
  w.epsilon = 0.5;
  std::vector<double> g;
  const auto r = objective_kernel(c.points(), o, w, &g);
  CHECK(r.total == Approx(r.bending + 0.5 * r.length + r.obstacle + r.speed + r.monotone));
  CHECK(r.obstacle == 0.0);
  CHECK(r.monotone == 0.0);
  CHECK(r.speed < 1e-3);  // arclength sampling leaves speed deviations near 1e-6
  CHECK(r.length == Approx(c.length()));
  CHECK(r.bending == Approx(curve_energy(c).bending).epsilon(2e-3));
  CHECK(g.size() == 2 * 513);
}

TEST_CASE("obstacle penalty is active below psi") {
  const auto c = comparison_polyline(0.0, 256);
  const auto high = Obstacle::cone(1.5, 0.25);
  const auto r = objective_kernel(c.points(), high, PenaltyWeights{}, nullptr);
  CHECK(r.obstacle > 0.0);
}

TEST_CASE("gradient matches central differences") {
  Rng rng(22);
  const int n = 64;
  for (int t = 0; t < 6; ++t) {
    const auto o = Obstacle::cone(t % 2 ? 1.5 : 0.4, 0.25);
    PenaltyWeights w;
    w.epsilon = 0.3;
    w.obstacle = 1e3;
    w.speed = 1e2 * n * n * n;
    w.monotone = 1e3;
    auto p = noisy_state(rng, n, 0.0);
    std::vector<double> g;
    objective_kernel(p, o, w, &g, Exec::serial);
    std::vector<double> flat;
    for (auto v : p) {
      flat.push_back(v.x);
      flat.push_back(v.y);
    }
    auto f = [&](const std::vector<double>& z) {
      std::vector<Vec2> q(z.size() / 2);
      for (std::size_t i = 0; i < q.size(); ++i) q[i] = {z[2 * i], z[2 * i + 1]};
      return objective_kernel(q, o, w, nullptr, Exec::serial).total;
    };
    const auto fd = oracle::fd_gradient(f, flat, 1e-6);
    double scale = 1.0, err = 0.0;
    for (std::size_t i = 2; i + 2 < g.size(); ++i) scale = std::max(scale, std::abs(g[i]));
    for (std::size_t i = 2; i + 2 < g.size(); ++i) err = std::max(err, std::abs(fd[i] - g[i]));
    CHECK(err / scale < 1e-4);
  }
}

TEST_CASE("obstacle kinks") {
  const auto k = obstacle_kinks(Obstacle::cone(1.0, 0.25));
  REQUIRE(k.size() == 1);
  CHECK(k[0] == 0.5);
  const auto pl = obstacle_kinks(Obstacle::piecewise_linear({{0, -1}, {0.3, 0.5}, {0.6, 0.2}, {0.8, 0.4}, {1, -1}}));
  CHECK(pl == std::vector<double>{0.3, 0.6, 0.8});
  const std::vector<Vec2> p{{0, 0}, {0.2, 0.1}, {0.5, 0.2}, {1, 0}};
  CHECK(kink_segment(p, 0.3) == 1);
  CHECK(kink_segment(p, 0.7) == 2);
  CHECK(kink_segment(p, 1.5) == -1);
}
