#include "elastica/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "elastica/specfun.hpp"

namespace elastica {

namespace {

template <class T>
T first_derivative(std::span<const T> v, int i, double h) {
  const int n = static_cast<int>(v.size()) - 1;
  if (n < 2) return (v[n] - v[0]) * (1.0 / h);
  if (i == 0) return (-3.0 * v[0] + 4.0 * v[1] - v[2]) * (0.5 / h);
  if (i == n) return (3.0 * v[n] - 4.0 * v[n - 1] + v[n - 2]) * (0.5 / h);
  return (v[i + 1] - v[i - 1]) * (0.5 / h);
}

template <class T>
T second_derivative(std::span<const T> v, int i, double h) {
  const int n = static_cast<int>(v.size()) - 1;
  const double s = 1.0 / (h * h);
  if (n < 2) return (v[0] - v[0]) * s;
  if (n < 3) {
    i = std::clamp(i, 1, n - 1);
  } else if (i == 0) {
    return (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) * s;
  } else if (i == n) {
    return (2.0 * v[n] - 5.0 * v[n - 1] + 4.0 * v[n - 2] - v[n - 3]) * s;
  }
  return (v[i + 1] - 2.0 * v[i] + v[i - 1]) * s;
}

double trapezoid(const std::vector<double>& f, double h) {
  if (f.size() < 2) return 0.0;
  double s = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
  return s * h;
}

}  // namespace

// ---------------------------------------------------------------------------

SampledGraph::SampledGraph(std::vector<double> values)
    : values_(std::move(values)) {
  if (static_cast<int>(values_.size()) - 1 < kMinResolution) {
    throw GeometryError("SampledGraph: resolution below minimum");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw GeometryError("SampledGraph: non-finite value");
  }
}

SampledGraph SampledGraph::from_function(
    const std::function<double(double)>& u, int n) {
  std::vector<double> v(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) v[i] = u(static_cast<double>(i) / n);
  return SampledGraph(std::move(v));
}

double SampledGraph::slope(int i) const {
  return first_derivative<double>(values_, i, h());
}

double SampledGraph::second(int i) const {
  return second_derivative<double>(values_, i, h());
}

double SampledGraph::curvature(int i) const {
  const double p = slope(i);
  return second(i) / std::pow(1.0 + p * p, 1.5);
}

double SampledGraph::eval(double x) const {
  const double t = std::clamp(x, 0.0, 1.0) * n();
  const int i = std::min(static_cast<int>(t), n() - 1);
  const double w = t - i;
  return (1.0 - w) * values_[i] + w * values_[i + 1];
}

// ---------------------------------------------------------------------------

PolyCurve::PolyCurve(std::vector<Vec2> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw GeometryError("PolyCurve: need two points");
  for (const Vec2& p : points_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw GeometryError("PolyCurve: non-finite point");
    }
  }
}

double PolyCurve::length() const {
  double L = 0.0;
  for (int i = 0; i < n(); ++i) L += norm(points_[i + 1] - points_[i]);
  return L;
}

std::vector<double> PolyCurve::segment_lengths() const {
  std::vector<double> out(static_cast<std::size_t>(n()));
  for (int i = 0; i < n(); ++i) out[i] = norm(points_[i + 1] - points_[i]);
  return out;
}

double PolyCurve::min_segment_length() const {
  const auto s = segment_lengths();
  return *std::min_element(s.begin(), s.end());
}

Vec2 PolyCurve::velocity(int i) const {
  return first_derivative<Vec2>(points_, i, h());
}

Vec2 PolyCurve::acceleration(int i) const {
  return second_derivative<Vec2>(points_, i, h());
}

Vec2 PolyCurve::normal(int i) const {
  const Vec2 v = velocity(i);
  const double s = norm(v);
  return {-v.y / s, v.x / s};
}

void PolyCurve::check_immersed(double floor) const {
  const double L = length();
  const double m = min_segment_length();
  if (!(L > 0.0) || m < floor * L) {
    throw ImmersionError("PolyCurve: segment length " + std::to_string(m) +
                         " below immersion floor");
  }
}

// ---------------------------------------------------------------------------

double graph_energy(const SampledGraph& g) {
  std::vector<double> f(static_cast<std::size_t>(g.n()) + 1);
  for (int i = 0; i <= g.n(); ++i) {
    const double p = g.slope(i);
    const double s = g.second(i);
    f[i] = s * s / std::pow(1.0 + p * p, 2.5);
  }
  return trapezoid(f, g.h());
}

EnergyBreakdown curve_energy(const PolyCurve& c, double epsilon) {
  c.check_immersed();
  std::vector<double> f(static_cast<std::size_t>(c.n()) + 1, 0.0);
  if (c.n() >= 2) {
    for (int i = 0; i <= c.n(); ++i) {
      const Vec2 v = c.velocity(i);
      const Vec2 a = c.acceleration(i);
      const double sp = norm(v);
      const double k = cross(v, a);
      f[i] = k * k / std::pow(sp, 5);
    }
  }
  EnergyBreakdown e;
  e.bending = trapezoid(f, c.h());
  e.length = c.length();
  e.epsilon = epsilon;
  e.total = e.bending + epsilon * e.length;
  return e;
}

double speed_deviation(const PolyCurve& c) {
  const auto s = c.segment_lengths();
  const double mean = std::accumulate(s.begin(), s.end(), 0.0) / s.size();
  double dev = 0.0;
  for (double v : s) dev = std::max(dev, std::abs(v - mean));
  return dev / mean;
}

EnergyBreakdown constant_velocity_energy(const PolyCurve& c, double epsilon,
                                         double max_speed_deviation) {
  c.check_immersed();
  const double dev = speed_deviation(c);
  if (dev > max_speed_deviation) {
    throw NotConstantSpeedError(
        "constant_velocity_energy: speed deviation " + std::to_string(dev),
        dev);
  }
  const double L = c.length();
  std::vector<double> f(static_cast<std::size_t>(c.n()) + 1, 0.0);
  if (c.n() >= 2) {
    for (int i = 0; i <= c.n(); ++i) {
      const Vec2 a = c.acceleration(i);
      f[i] = dot(a, a);
    }
  }
  EnergyBreakdown e;
  e.bending = trapezoid(f, c.h()) / (L * L * L);
  e.length = L;
  e.epsilon = epsilon;
  e.total = e.bending + epsilon * L;
  return e;
}

// ---------------------------------------------------------------------------

namespace {

// Walk the polyline taking steps of chord length d. Returns the visited
// points (excluding the start); stops early when the polyline runs out.
std::vector<Vec2> chord_march(std::span<const Vec2> p, double d, int steps) {
  std::vector<Vec2> out;
  out.reserve(static_cast<std::size_t>(steps));
  Vec2 q = p[0];
  int seg = 0;
  double s = 0.0;
  const int nseg = static_cast<int>(p.size()) - 1;
  const double d2 = d * d;
  while (static_cast<int>(out.size()) < steps) {
    bool found = false;
    while (seg < nseg) {
      const Vec2 a = p[seg];
      const Vec2 e = p[seg + 1] - a;
      const Vec2 w = a - q;
      // |w + tau e|^2 = d^2
      const double A = dot(e, e);
      const double B = 2.0 * dot(w, e);
      const double C = dot(w, w) - d2;
      if (A > 0.0) {
        const double disc = B * B - 4.0 * A * C;
        if (disc >= 0.0) {
          const double sq = std::sqrt(disc);
          const double r1 = (-B - sq) / (2.0 * A);
          const double r2 = (-B + sq) / (2.0 * A);
          double tau = -1.0;
          if (r1 >= s && r1 <= 1.0) {
            tau = r1;
          } else if (r2 >= s && r2 <= 1.0) {
            tau = r2;
          }
          if (tau >= 0.0) {
            q = a + tau * e;
            s = tau;
            found = true;
            break;
          }
        }
      }
      ++seg;
      s = 0.0;
    }
    if (!found) break;
    out.push_back(q);
  }
  return out;
}

}  // namespace

PolyCurve to_constant_speed(const PolyCurve& c, int n_out) {
  if (n_out < 0) n_out = c.n();
  if (n_out < 1) throw GeometryError("to_constant_speed: n_out must be >= 1");
  const auto pts = c.points();
  const Vec2 end = pts.back();
  const double L = c.length();
  if (n_out == 1) return PolyCurve({pts.front(), end});

  // F(d) = |end - q_{n-1}| - d is decreasing in d; an early stop counts as
  // a step that was too long.
  auto residual = [&](double d, std::vector<Vec2>* keep) {
    std::vector<Vec2> q = chord_march(pts, d, n_out - 1);
    if (static_cast<int>(q.size()) < n_out - 1) return -1.0;
    const double r = norm(end - q.back()) - d;
    if (keep) *keep = std::move(q);
    return r;
  };
  double lo = 0.0;
  double hi = L / n_out;
  std::vector<Vec2> best;
  if (residual(hi, &best) >= 0.0) {
    // exact arclength steps already land on the end (straight input)
    lo = hi;
  } else {
    for (int it = 0; it < 200 && hi - lo > 1e-17 * L; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (residual(mid, nullptr) >= 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    residual(lo, &best);
  }
  std::vector<Vec2> out;
  out.reserve(static_cast<std::size_t>(n_out) + 1);
  out.push_back(pts.front());
  out.insert(out.end(), best.begin(), best.end());
  out.push_back(end);
  return PolyCurve(std::move(out));
}

PolyCurve graph_to_curve(const SampledGraph& g) {
  std::vector<Vec2> pts(static_cast<std::size_t>(g.n()) + 1);
  for (int i = 0; i <= g.n(); ++i) pts[i] = {g.x(i), g[i]};
  return PolyCurve(std::move(pts));
}

SampledGraph curve_to_graph(const PolyCurve& c, int n_grid, Interp interp) {
  if (n_grid < 0) n_grid = c.n();
  const auto p = c.points();
  for (int i = 0; i < c.n(); ++i) {
    if (!(p[i + 1].x > p[i].x)) {
      throw NotMonotoneError("curve_to_graph: x must be strictly increasing");
    }
  }
  const double x0 = p.front().x;
  const double x1 = p.back().x;
  std::vector<double> v(static_cast<std::size_t>(n_grid) + 1);
  int seg = 0;
  const int m = c.n();
  for (int j = 0; j <= n_grid; ++j) {
    const double x = x0 + (x1 - x0) * j / n_grid;
    while (seg < m - 1 && p[seg + 1].x < x) ++seg;
    if (interp == Interp::linear || m < 3) {
      const double w = (x - p[seg].x) / (p[seg + 1].x - p[seg].x);
      v[j] = (1.0 - w) * p[seg].y + w * p[seg + 1].y;
    } else {
      const int k0 = std::clamp(seg - 1, 0, m - 3);
      double acc = 0.0;
      for (int a = k0; a < k0 + 4; ++a) {
        double l = 1.0;
        for (int b = k0; b < k0 + 4; ++b) {
          if (b != a) l *= (x - p[b].x) / (p[a].x - p[b].x);
        }
        acc += l * p[a].y;
      }
      v[j] = acc;
    }
  }
  return SampledGraph(std::move(v));
}

double energy_oscillation_bound(const SampledGraph& g, int b1, int b2) {
  if (b1 < 0 || b2 < 0 || b1 > g.n() || b2 > g.n()) {
    throw GeometryError("energy_oscillation_bound: index out of range");
  }
  const double d = g_of(g.slope(b2)) - g_of(g.slope(b1));
  return d * d;
}

}  // namespace elastica
