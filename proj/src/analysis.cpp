#include "elastica/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

// the Boost 1.74 pchip header calls isnan unqualified
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

namespace elastica {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

double c0() { return g_profile().c0(); }

// K(w) = int_0^w sin^{-1/2}, J(w) = int_0^w sin^{1/2}; both on [0, pi/2].
double arc_k(double w) {
  if (w <= 0.0) return 0.0;
  QuadratureSpec q;
  q.singular_left = true;
  return integrate([](double u) { return 1.0 / std::sqrt(std::sin(u)); }, 0.0, w, q);
}

double arc_j(double w) {
  if (w <= 0.0) return 0.0;
  return integrate([](double u) { return std::sqrt(std::sin(u)); }, 0.0, w);
}

// Solve K(w) = target by safeguarded Newton in r = sqrt(w), where K is
// smooth (K ~ 2r near 0).
double arc_k_inverse(double target) {
  if (target <= 0.0) return 0.0;
  double lo = 0.0;
  double hi = std::sqrt(kHalfPi);
  double r = std::clamp(target / 2.0, lo, hi);
  for (int it = 0; it < 100; ++it) {
    const double w = r * r;
    const double f = arc_k(w) - target;
    if (f > 0.0) hi = r; else lo = r;
    const double df = w > 0.0 ? 2.0 * r / std::sqrt(std::sin(w)) : 2.0;
    double next = r - f / df;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - r) <= 1e-15 * (1.0 + r)) return next * next;
    r = next;
  }
  return r * r;
}

}  // namespace

double comparison_profile(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  if (x > 0.5) x = 1.0 - x;  // exact symmetry
  const double k = c0();
  const double p = g_inv(k / 2.0 - k * x);
  return (2.0 / k) * std::pow(1.0 + p * p, -0.25);
}

CapShape comparison_curve(double S, int n) {
  if (n < 64) throw std::invalid_argument("comparison_curve: n must be >= 64");
  if (!(S >= 0.0)) throw std::invalid_argument("comparison_curve: S must be >= 0");
  std::vector<double> top(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    top[i] = S + comparison_profile(static_cast<double>(i) / n);
  }
  CapShape cs{S, S, SampledGraph(std::move(top)), false, {}};
  cs.concave_certified = max_second_difference(cs.top) <= 1e-9;
  return cs;
}

double comparison_top_length() {
  QuadratureSpec q;
  // (1+t^2)^{-3/4} decays like |t|^{-3/2}; fold onto [0,1] with t = tan(th)
  // to get int_0^{pi/2} cos^{-1/2}(th) dth, singular at pi/2
  q.singular_right = true;
  const double half = integrate(
      [](double th) { return 1.0 / std::sqrt(std::cos(th)); }, 0.0, kHalfPi, q);
  return 2.0 * half / c0();
}

PolyCurve comparison_polyline(double S, int n) {
  if (n < 8) throw std::invalid_argument("comparison_polyline: n must be >= 8");
  if (!(S >= 0.0)) throw std::invalid_argument("comparison_polyline: S must be >= 0");
  const double k = c0();
  const double l_top = comparison_top_length();
  const double total = 2.0 * S + l_top;
  std::vector<Vec2> pts(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const double s = total * i / n;
    if (i == 0) {
      pts[i] = {0.0, 0.0};
    } else if (i == n) {
      pts[i] = {1.0, 0.0};
    } else if (s <= S) {
      pts[i] = {0.0, s};
    } else if (s >= S + l_top) {
      pts[i] = {1.0, total - s};
    } else {
      // w = pi/2 - |tangent angle|; x = J(w)/c0 on the left half
      const double sigma = s - S;
      const bool left = sigma <= 0.5 * l_top;
      const double w = arc_k_inverse(k * (left ? sigma : l_top - sigma));
      const double xl = arc_j(w) / k;
      pts[i] = {left ? xl : 1.0 - xl, S + (2.0 / k) * std::sqrt(std::sin(w))};
    }
  }
  return PolyCurve(std::move(pts));
}

double shooting_f0(double z, double m0) {
  if (z >= m0) return 0.0;
  QuadratureSpec q;
  q.singular_right = true;
  return integrate(
      [m0](double t) {
        return 1.0 / (std::sqrt(m0 - t) * std::pow(1.0 + t * t, 1.25));
      },
      z, m0, q);
}

double shooting_minimal_c0(double m0) {
  const double f = shooting_f0(0.0, m0);
  return -2.0 * f * f;
}

double shooting_peak_formula(double m0, double C0) {
  QuadratureSpec q;
  q.singular_right = true;
  const double v = integrate(
      [m0](double t) {
        return t / (std::sqrt(m0 - t) * std::pow(1.0 + t * t, 1.25));
      },
      0.0, m0, q);
  return v / std::sqrt(2.0 * std::abs(C0));
}

ConeCandidate cone_shooting(double m0, double C0, int n) {
  if (!(m0 > 0.0)) throw std::invalid_argument("cone_shooting: need m0 > 0");
  if (!(C0 <= 0.0)) throw std::invalid_argument("cone_shooting: need C0 <= 0");
  if (n < 8) throw std::invalid_argument("cone_shooting: n must be >= 8");

  ConeCandidate out;
  out.m0 = m0;
  out.C0 = C0;
  out.x.resize(static_cast<std::size_t>(n) + 1);
  out.slope.resize(out.x.size());
  out.height.resize(out.x.size());
  for (int j = 0; j <= n; ++j) out.x[j] = 0.5 * j / n;

  const double kk = std::sqrt(2.0 * std::abs(C0));
  if (kk == 0.0) {
    for (int j = 0; j <= n; ++j) {
      out.slope[j] = m0;
      out.height[j] = m0 * out.x[j];
    }
    out.m1 = m0;
    return out;
  }

  // slope range: need F0(z_min) >= kk/2
  const double y_max = 0.5 * kk;
  double span = 1.0;
  while (shooting_f0(m0 - span, m0) < y_max) {
    span *= 2.0;
    if (span > 1e8) {
      throw std::domain_error("cone_shooting: slope diverges before x = 1/2");
    }
  }

  // cosine-clustered nodes, dense near z = m0 where F0 ~ 2 sqrt(m0 - z);
  // the inverse is interpolated in tau = sqrt(m0 - z), where it is smooth
  constexpr int K = 2048;
  std::vector<double> dist(K + 1);
  std::vector<double> f(K + 1);
  for (int k = 0; k <= K; ++k) {
    const double s = std::sin(kHalfPi * (K - k) / (2.0 * K));
    dist[k] = 2.0 * span * s * s;  // m0 - z_k = span (1 - sin(pi k / 2K))
  }
  f[K] = 0.0;
  for (int k = K - 1; k >= 0; --k) {
    QuadratureSpec q;
    q.singular_right = (k + 1 == K);
    f[k] = f[k + 1] + integrate(
                          [m0](double t) {
                            return 1.0 / (std::sqrt(m0 - t) *
                                          std::pow(1.0 + t * t, 1.25));
                          },
                          m0 - dist[k], m0 - dist[k + 1], q);
  }
  std::vector<double> fa(f.rbegin(), f.rend());
  std::vector<double> ta(K + 1);
  for (int k = 0; k <= K; ++k) ta[k] = std::sqrt(dist[K - k]);
  const double f_top = fa.back();
  using boost::math::interpolators::pchip;
  auto inv = pchip<std::vector<double>>(std::move(fa), std::move(ta));

  for (int j = 0; j <= n; ++j) {
    const double tau = j == 0 ? 0.0 : inv(std::min(kk * out.x[j], f_top));
    out.slope[j] = m0 - tau * tau;
  }
  out.m1 = out.slope[n];

  out.height[0] = 0.0;
  const double h = 0.5 / n;
  for (int j = 1; j <= n; ++j) {
    out.height[j] = out.height[j - 1] + 0.5 * h * (out.slope[j - 1] + out.slope[j]);
  }

  // ODE residual: -u'' = kk sqrt(m0 - u') (1 + u'^2)^{5/4}
  double res = 0.0;
  double scale = 0.0;
  for (int j = 1; j < n; ++j) {
    const double upp = (out.slope[j + 1] - out.slope[j - 1]) / (2.0 * h);
    const double p = out.slope[j];
    const double rhs = kk * std::sqrt(std::max(m0 - p, 0.0)) * std::pow(1.0 + p * p, 1.25);
    res = std::max(res, std::abs(-upp - rhs));
    scale = std::max(scale, std::abs(rhs));
  }
  out.ode_residual = scale > 0.0 ? res / scale : res;

  // first zero of u', when it falls inside the half interval
  const double f_zero = shooting_f0(0.0, m0);
  const double xs = f_zero / kk;
  if (xs <= 0.5) {
    out.peak_x = xs;
    const int j = std::min(static_cast<int>(xs / h), n - 1);
    const double dx = xs - out.x[j];
    out.peak_height = out.height[j] + 0.5 * dx * (out.slope[j] + 0.0);
  }
  return out;
}

ConeCandidate cone_shooting_right(double m1, double C1, int n) {
  if (!(m1 < 0.0)) throw std::invalid_argument("cone_shooting_right: need m1 < 0");
  if (!(C1 >= 0.0)) throw std::invalid_argument("cone_shooting_right: need C1 >= 0");
  const ConeCandidate l = cone_shooting(-m1, -C1, n);
  ConeCandidate r;
  r.m0 = l.m1 == 0.0 ? 0.0 : -l.m1;
  r.m1 = m1;
  r.C0 = 0.0;
  r.C1 = C1;
  r.ode_residual = l.ode_residual;
  const std::size_t m = l.x.size();
  r.x.resize(m);
  r.slope.resize(m);
  r.height.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t src = m - 1 - j;
    r.x[j] = 1.0 - l.x[src];
    r.slope[j] = -l.slope[src];
    r.height[j] = l.height[src];
  }
  if (l.peak_x) {
    r.peak_x = 1.0 - *l.peak_x;
    r.peak_height = l.peak_height;
  }
  return r;
}

double cone_height_bound(double m0) {
  if (!(m0 > 0.0)) throw std::invalid_argument("cone_height_bound: need m0 > 0");
  return cone_threshold_ratio(m0);
}

double length_bound_one_sided(double m) {
  m = std::abs(m);
  return m + std::sqrt(1.0 + m * m);
}

double length_bound_touching(const Obstacle& o) {
  return 2.0 * (o.sup_value() + o.slope_bound()) + 1.0;
}

LengthBound length_bound_main(double alpha, const GProfile& prof,
                              const Obstacle& o) {
  const double c = prof.c0();
  if (!(alpha < c * c)) {
    throw RangeError("length_bound_main: alpha must be below c0^2");
  }
  const double arg = std::sqrt(0.5 * (std::max(alpha, 0.0) + c * c)) - 0.5 * c;
  if (arg >= prof.half()) {
    throw RangeError("length_bound_main: g_inv argument reaches c0/2");
  }
  LengthBound b;
  const double p = g_inv(arg, prof);
  b.graph_part = p + std::sqrt(1.0 + p * p);
  b.touching_part = length_bound_touching(o);
  b.value = std::max(b.graph_part, b.touching_part);
  b.near_degenerate = prof.half() - arg <= 1e-6;
  return b;
}

namespace {

// d/dx of grid data with central differences, second-order one-sided ends.
std::vector<double> grid_derivative(const std::vector<double>& f, double h) {
  const std::size_t m = f.size();
  std::vector<double> d(m);
  for (std::size_t i = 1; i + 1 < m; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  d[m - 1] = (3.0 * f[m - 1] - 4.0 * f[m - 2] + f[m - 3]) / (2.0 * h);
  return d;
}

}  // namespace

ELReport el_residuals(const SampledGraph& g, const Obstacle& o, double epsilon,
                      const ELOptions& opt) {
  const int n = g.n();
  const double h = g.h();
  const double tol = opt.contact_tol > 0.0 ? opt.contact_tol
                                           : 1e-6 * (1.0 + std::abs(o.sup_value()));
  const int margin = opt.margin >= 0 ? opt.margin : std::max(4, n / 64);

  ELReport r;
  const std::size_t m = static_cast<std::size_t>(n) + 1;
  std::vector<double> p(m), upp(m), w(m);
  r.v.resize(m);
  for (int i = 0; i <= n; ++i) {
    p[i] = g.slope(i);
    upp[i] = g.second(i);
    w[i] = 1.0 + p[i] * p[i];
    r.v[i] = upp[i] / std::pow(w[i], 1.25);
  }
  r.v_left = r.v.front();
  r.v_right = r.v.back();
  const std::vector<double> dv = grid_derivative(r.v, h);
  const std::vector<double> ddv = grid_derivative(dv, h);
  r.lagrange.resize(m);
  for (std::size_t i = 0; i < m; ++i) r.lagrange[i] = dv[i] / std::pow(w[i], 1.25);

  std::vector<char> contact(m, 0);
  for (int i = 0; i <= n; ++i) {
    if (std::abs(g[i] - o.eval(g.x(i))) <= tol) {
      contact[i] = 1;
      r.contact_nodes.push_back(i);
    }
  }

  // maximal off-contact runs, trimmed by the stencil margin on both sides
  int i = 0;
  while (i <= n) {
    if (contact[i]) { ++i; continue; }
    int j = i;
    while (j + 1 <= n && !contact[j + 1]) ++j;
    const int a = i + margin;
    const int b = j - margin;
    if (b - a >= 2) {
      double mean = 0.0;
      for (int k = a; k <= b; ++k) mean += r.lagrange[k];
      mean /= (b - a + 1);
      double var = 0.0;
      for (int k = a; k <= b; ++k) var += (r.lagrange[k] - mean) * (r.lagrange[k] - mean);
      const double sd = std::sqrt(var / (b - a + 1));
      r.interval_constants.push_back(mean);
      r.piecewise_const_dev =
          std::max(r.piecewise_const_dev, sd / std::max(std::abs(mean), 1.0));
      for (int k = a; k <= b; ++k) {
        const double res = -2.0 * ddv[k] / std::pow(w[k], 1.25) +
                           5.0 * upp[k] * p[k] * dv[k] / std::pow(w[k], 2.25) +
                           epsilon * upp[k] / std::pow(w[k], 1.5);
        r.penalized_residual = std::max(r.penalized_residual, std::abs(res));
      }
    }
    i = j + 1;
  }
  return r;
}

}  // namespace elastica
