#include "elastica/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace elastica {

namespace {

// a + b = s + e exactly
void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

// Exact sign of (b - a)(y_i - y_a) - (y_b - y_a)(i - a). The hull of a
// profile that was itself read off a hull is full of collinear runs, where
// a rounded determinant decides arbitrarily.
int orientation_sign(int a, int b, int i, double ya, double yb, double yi) {
  double s1, e1, s2, e2;
  two_sum(yi, -ya, s1, e1);
  two_sum(yb, -ya, s2, e2);
  const double A = static_cast<double>(b - a);
  const double B = -static_cast<double>(i - a);
  double terms[8];
  terms[0] = A * s1;
  terms[1] = std::fma(A, s1, -terms[0]);
  terms[2] = A * e1;
  terms[3] = std::fma(A, e1, -terms[2]);
  terms[4] = B * s2;
  terms[5] = std::fma(B, s2, -terms[4]);
  terms[6] = B * e2;
  terms[7] = std::fma(B, e2, -terms[6]);
  // grow a nonoverlapping expansion; its largest component carries the sign
  double ex[8];
  int m = 0;
  for (double t : terms) {
    double q = t;
    int k = 0;
    for (int j = 0; j < m; ++j) {
      double hi, lo;
      two_sum(q, ex[j], hi, lo);
      if (lo != 0.0) ex[k++] = lo;
      q = hi;
    }
    if (q != 0.0) ex[k++] = q;
    m = k;
  }
  if (m == 0) return 0;
  return ex[m - 1] > 0.0 ? 1 : -1;
}

}  // namespace

SampledGraph upper_concave_envelope(const SampledGraph& profile) {
  const int n = profile.n();
  const auto y = profile.values();
  // exact orientation plus one interpolation formula: any correct
  // majorant algorithm reproduces these values bit for bit
  std::vector<int> hull;
  hull.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    while (hull.size() >= 2) {
      const int a = hull[hull.size() - 2];
      const int b = hull.back();
      if (orientation_sign(a, b, i, y[a], y[b], y[i]) >= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }
  std::vector<double> env(y.begin(), y.end());
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    const int a = hull[k];
    const int b = hull[k + 1];
    for (int j = a + 1; j < b; ++j) {
      const double v = y[a] + (y[b] - y[a]) * (static_cast<double>(j - a) / (b - a));
      env[j] = std::max(v, y[j]);
    }
  }
  return SampledGraph(std::move(env));
}

std::vector<Vec2> upper_hull(const std::vector<Vec2>& pts) {
  std::vector<Vec2> hull;
  for (const Vec2& p : pts) {
    if (!hull.empty() && p.x == hull.back().x) {
      if (p.y <= hull.back().y) continue;
      hull.pop_back();
    }
    while (hull.size() >= 2) {
      const Vec2 a = hull[hull.size() - 2];
      const Vec2 b = hull.back();
      if (cross(b - a, p - a) >= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  }
  return hull;
}

namespace {

double hull_eval(const std::vector<Vec2>& hull, double x) {
  auto it = std::lower_bound(hull.begin(), hull.end(), x,
                             [](const Vec2& p, double v) { return p.x < v; });
  if (it == hull.end()) return hull.back().y;
  if (it->x == x || it == hull.begin()) return it->y;
  const Vec2 b = *it;
  const Vec2 a = *(it - 1);
  const double w = (x - a.x) / (b.x - a.x);
  return a.y + w * (b.y - a.y);
}

// x snapped to the end lines and made non-decreasing.
std::vector<Vec2> pseudograph_points(const PolyCurve& c, double x_tol) {
  std::vector<Vec2> p(c.points().begin(), c.points().end());
  double run = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0 && p[i].x < p[i - 1].x - x_tol) {
      throw NotMonotoneError("cap_project: x decreases along the curve");
    }
    double x = std::clamp(p[i].x, 0.0, 1.0);
    if (x <= x_tol) x = 0.0;
    if (x >= 1.0 - x_tol) x = 1.0;
    run = std::max(run, x);
    p[i].x = run;
  }
  return p;
}

}  // namespace

double max_second_difference(const SampledGraph& g) {
  double m = -std::numeric_limits<double>::infinity();
  for (int i = 1; i < g.n(); ++i) m = std::max(m, g[i + 1] - 2.0 * g[i] + g[i - 1]);
  return m;
}

SampledGraph upper_profile(const PolyCurve& c, const CapOptions& opt, std::vector<Vec2>* hull_out) {
  const auto src = c.points();
  if (std::abs(src.front().x) > opt.end_tol ||
      std::abs(src.front().y) > opt.end_tol ||
      std::abs(src.back().x - 1.0) > opt.end_tol ||
      std::abs(src.back().y) > opt.end_tol) {
    throw GeometryError("cap_project: endpoints must be (0,0) and (1,0)");
  }
  const std::vector<Vec2> p = pseudograph_points(c, opt.x_tol);
  const int n = opt.n_grid > 0 ? opt.n_grid : std::max(c.n(), SampledGraph::kMinResolution);

  // upper profile on the grid: sup of y over the polyline above each node
  std::vector<double> prof(static_cast<std::size_t>(n) + 1,
                           -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const Vec2 a = p[i];
    const Vec2 b = p[i + 1];
    const int j0 = static_cast<int>(std::ceil(a.x * n - 1e-9));
    const int j1 = static_cast<int>(std::floor(b.x * n + 1e-9));
    for (int j = std::max(j0, 0); j <= std::min(j1, n); ++j) {
      const double x = static_cast<double>(j) / n;
      double v;
      if (b.x - a.x <= opt.x_tol) {
        v = std::max(a.y, b.y);
      } else {
        const double w = std::clamp((x - a.x) / (b.x - a.x), 0.0, 1.0);
        v = a.y + w * (b.y - a.y);
      }
      prof[j] = std::max(prof[j], v);
    }
  }
  for (double& v : prof) {
    if (!std::isfinite(v)) throw GeometryError("cap_project: profile gap");
  }

  // The hull of the vertices is the least concave majorant of the whole
  // polyline profile; reading it at the nodes (rather than taking the
  // majorant of the node samples) avoids an O(h^2) sag between nodes and
  // makes cap_project(cap_concat(cs)) reproduce cs.
  std::vector<Vec2> hull = upper_hull(p);
  for (int j = 0; j <= n; ++j) {
    prof[j] = std::max(prof[j], hull_eval(hull, static_cast<double>(j) / n));
  }
  if (hull_out) *hull_out = std::move(hull);
  return SampledGraph(std::move(prof));
}

CapShape cap_project(const PolyCurve& c, const CapOptions& opt) {
  std::vector<Vec2> hull;
  SampledGraph prof = upper_profile(c, opt, &hull);
  CapShape cs{0.0, 0.0, upper_concave_envelope(prof), false, std::move(hull)};
  const int n = cs.top.n();
  cs.h_left = cs.top[0];
  cs.h_right = cs.top[n];
  cs.concave_certified = max_second_difference(cs.top) <= 1e-9;
  return cs;
}

PolyCurve cap_concat(const CapShape& cs) {
  std::vector<Vec2> top;
  if (!cs.hull.empty()) {
    top = cs.hull;
  } else {
    for (int i = 0; i <= cs.top.n(); ++i) top.push_back({cs.top.x(i), cs.top[i]});
  }
  double top_len = 0.0;
  for (std::size_t i = 0; i + 1 < top.size(); ++i) top_len += norm(top[i + 1] - top[i]);
  const int n_top = cs.top.n();
  const int m_left = static_cast<int>(std::ceil(n_top * cs.h_left / top_len));
  const int m_right = static_cast<int>(std::ceil(n_top * cs.h_right / top_len));

  std::vector<Vec2> pts;
  for (int k = 0; k < m_left; ++k) {
    pts.push_back({0.0, cs.h_left * k / m_left});
  }
  pts.insert(pts.end(), top.begin(), top.end());
  for (int k = 1; k <= m_right; ++k) {
    pts.push_back({1.0, cs.h_right * (m_right - k) / m_right});
  }
  // drop duplicates (e.g. hull vertices sitting on the stubs)
  std::vector<Vec2> clean;
  for (const Vec2& q : pts) {
    if (clean.empty() || !(q == clean.back())) clean.push_back(q);
  }
  return PolyCurve(std::move(clean));
}

namespace {

// Subdivides each segment k times along the cubic through the four
// surrounding vertices (cumulative chord length as parameter) when its
// neighbours have comparable length; hull bridges stay straight. Resampling
// along plain chords puts new nodes inside the curve by h^2 kappa / 8, which
// is an O(1) error in the discrete curvature.
std::vector<Vec2> densify(std::span<const Vec2> p, int k) {
  const std::size_t m = p.size();
  std::vector<double> s(m, 0.0);
  for (std::size_t i = 1; i < m; ++i) s[i] = s[i - 1] + norm(p[i] - p[i - 1]);
  auto comparable = [](double a, double b) { return a <= 2.0 * b && b <= 2.0 * a; };
  std::vector<Vec2> out;
  out.reserve(m * k);
  double run = 0.0;
  for (std::size_t j = 0; j + 1 < m; ++j) {
    out.push_back(p[j]);
    const bool cubic = j >= 1 && j + 2 < m &&
                       comparable(s[j] - s[j - 1], s[j + 1] - s[j]) &&
                       comparable(s[j + 2] - s[j + 1], s[j + 1] - s[j]);
    for (int q = 1; q < k; ++q) {
      const double w = static_cast<double>(q) / k;
      Vec2 v;
      if (cubic) {
        const double t = s[j] + w * (s[j + 1] - s[j]);
        for (int a = -1; a <= 2; ++a) {
          double l = 1.0;
          for (int b = -1; b <= 2; ++b) {
            if (b != a) l *= (t - s[j + b]) / (s[j + a] - s[j + b]);
          }
          v += l * p[j + a];
        }
      } else {
        v = p[j] + w * (p[j + 1] - p[j]);
      }
      out.push_back(v);
    }
  }
  out.push_back(p[m - 1]);
  // keep the pseudograph structure: x inside [0,1] and non-decreasing
  for (Vec2& v : out) {
    v.x = std::clamp(v.x, 0.0, 1.0);
    run = std::max(run, v.x);
    v.x = run;
  }
  return out;
}

}  // namespace

PolyCurve cap_to_curve(const CapShape& cs) {
  const PolyCurve c = cap_concat(cs);
  const int n_top = cs.top.n();
  double top_len = 0.0;
  for (int i = 0; i < c.n(); ++i) {
    if (c[i].x != c[i + 1].x) top_len += norm(c[i + 1] - c[i]);
  }
  const int m_left = cs.h_left > 0.0 && top_len > 0.0 ? static_cast<int>(std::ceil(n_top * cs.h_left / top_len)) : 0;
  const int m_right = cs.h_right > 0.0 && top_len > 0.0 ? static_cast<int>(std::ceil(n_top * cs.h_right / top_len)) : 0;
  return to_constant_speed(PolyCurve(densify(c.points(), 16)), m_left + n_top + m_right);
}

PolyCurve cap_lift(const PolyCurve& c, double x_tol) {
  std::vector<Vec2> p(c.points().begin(), c.points().end());
  double run = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double x = std::clamp(p[i].x, 0.0, 1.0);
    run = std::max(run, x);
    p[i].x = run;
  }
  const std::vector<Vec2> hull = upper_hull(p);
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    if (p[i].x > x_tol && p[i].x < 1.0 - x_tol) {
      p[i].y = std::max(p[i].y, hull_eval(hull, p[i].x));
    }
  }
  return PolyCurve(std::move(p));
}

}  // namespace elastica
