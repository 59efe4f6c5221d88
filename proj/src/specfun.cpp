#include "elastica/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace elastica {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && std::floor(x) == x;
}

// Lanczos approximation, g = 7, n = 9.
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_gamma(double x) {
  // valid for x >= 0.5
  x -= 1.0;
  double acc = kLanczos[0];
  for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (x + i);
  const double t = x + 7.5;
  // split the power to delay overflow for large arguments
  const double half_pow = std::pow(t, 0.5 * (x + 0.5));
  return std::sqrt(2.0 * kPi) * half_pow * (half_pow * std::exp(-t)) * acc;
}

}  // namespace

double gamma_fn(double x) {
  if (is_nonpositive_integer(x)) {
    throw PoleError("gamma: pole at non-positive integer " + std::to_string(x));
  }
  if (x < 0.5) {
    return kPi / (std::sin(kPi * x) * lanczos_gamma(1.0 - x));
  }
  // exact factorials keep integer arguments free of rounding noise
  if (x == std::floor(x) && x <= 21.0) {
    double f = 1.0;
    for (int k = 2; k < static_cast<int>(x); ++k) f *= k;
    return f;
  }
  return lanczos_gamma(x);
}

double rgamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  return 1.0 / gamma_fn(x);
}

double hyp2f1_series(const Hyp2F1Params& p, std::size_t max_terms) {
  if (!(std::abs(p.z) < 1.0)) {
    throw RangeError("hyp2f1_series: requires |z| < 1");
  }
  if (is_nonpositive_integer(p.c)) {
    throw PoleError("hyp2f1: c is a non-positive integer");
  }
  double term = 1.0;
  double sum = 1.0;
  for (std::size_t n = 0; n < max_terms; ++n) {
    const double dn = static_cast<double>(n);
    const double ratio =
        (p.a + dn) * (p.b + dn) / ((p.c + dn) * (dn + 1.0)) * p.z;
    term *= ratio;
    sum += term;
    if (term == 0.0) return sum;
    // once the ratio of successive terms is below one for good, the tail is
    // bounded by a geometric series with the limiting ratio |z|
    const double r = std::max(std::abs(ratio), std::abs(p.z));
    if (r < 1.0 && dn > std::abs(p.a) + std::abs(p.b) + std::abs(p.c)) {
      const double tail = std::abs(term) * r / (1.0 - r);
      if (tail <= 1e-16 * std::abs(sum)) return sum;
    }
  }
  throw ConvergenceError("hyp2f1_series: no convergence within term cap");
}

namespace {

// 2F1 for 0 <= w < 1.
double hyp2f1_unit(double a, double b, double c, double w) {
  if (w <= 0.75) return hyp2f1_series({a, b, c, w});
  const double d = c - a - b;
  if (std::abs(d - std::round(d)) < 1e-6) {
    return hyp2f1_series({a, b, c, w});
  }
  const double one_minus = 1.0 - w;
  const double gc = gamma_fn(c);
  const double t1 = gc * gamma_fn(d) * rgamma(c - a) * rgamma(c - b);
  const double t2 = gc * gamma_fn(-d) * rgamma(a) * rgamma(b);
  double s1 = 0.0;
  double s2 = 0.0;
  if (t1 != 0.0) s1 = t1 * hyp2f1_series({a, b, 1.0 - d, one_minus});
  if (t2 != 0.0) {
    s2 = t2 * std::pow(one_minus, d) *
         hyp2f1_series({c - a, c - b, 1.0 + d, one_minus});
  }
  return s1 + s2;
}

}  // namespace

PfaffResult pfaff_transform(const Hyp2F1Params& p) {
  if (!(p.z < 1.0)) throw RangeError("pfaff_transform: requires z < 1");
  PfaffResult r;
  r.params = {p.a, p.c - p.b, p.c, p.z / (p.z - 1.0)};
  r.prefactor_exponent = -p.a;
  r.prefactor = std::pow(1.0 - p.z, -p.a);
  return r;
}

double hyp2f1(const Hyp2F1Params& p) {
  if (is_nonpositive_integer(p.c)) {
    throw PoleError("hyp2f1: c is a non-positive integer");
  }
  if (!(p.z < 1.0)) throw RangeError("hyp2f1: requires z < 1");
  if (p.z == 0.0) return 1.0;
  if (p.z < -0.5) {
    const PfaffResult t = pfaff_transform(p);
    return t.prefactor *
           hyp2f1_unit(t.params.a, t.params.b, t.params.c, t.params.z);
  }
  if (p.z < 0.0) return hyp2f1_series(p);
  return hyp2f1_unit(p.a, p.b, p.c, p.z);
}

// ---------------------------------------------------------------------------
// quadrature

namespace {

constexpr int kGaussOrder = 20;

struct GaussRule {
  std::array<double, kGaussOrder> nodes{};
  std::array<double, kGaussOrder> weights{};
};

GaussRule make_gauss_rule() {
  GaussRule rule;
  const int n = kGaussOrder;
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      dp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z_old = z;
      z = z_old - p1 / dp;
      if (std::abs(z - z_old) < 1e-16) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

const GaussRule& gauss_rule() {
  static const GaussRule rule = make_gauss_rule();
  return rule;
}

double gauss_panel(const std::function<double(double)>& f, double lo,
                   double hi) {
  const GaussRule& rule = gauss_rule();
  const double mid = 0.5 * (lo + hi);
  const double rad = 0.5 * (hi - lo);
  double s = 0.0;
  for (int i = 0; i < kGaussOrder; ++i) {
    s += rule.weights[i] * f(mid + rad * rule.nodes[i]);
  }
  return s * rad;
}

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
};

Panel make_panel(const std::function<double(double)>& f, double lo,
                 double hi) {
  const double mid = 0.5 * (lo + hi);
  const double whole = gauss_panel(f, lo, hi);
  const double halves = gauss_panel(f, lo, mid) + gauss_panel(f, mid, hi);
  return {lo, hi, halves, std::abs(whole - halves)};
}

QuadratureResult adaptive_gauss(const std::function<double(double)>& f,
                                double a, double b, int panel_count,
                                double abs_tol, double rel_tol,
                                int max_panels) {
  std::vector<Panel> panels;
  panels.reserve(static_cast<std::size_t>(max_panels) + 2);
  const double width = (b - a) / panel_count;
  for (int i = 0; i < panel_count; ++i) {
    const double lo = a + i * width;
    const double hi = (i + 1 == panel_count) ? b : a + (i + 1) * width;
    panels.push_back(make_panel(f, lo, hi));
  }
  while (true) {
    double value = 0.0;
    double error = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      value += panels[i].value;
      error += panels[i].error;
      if (panels[i].error > panels[worst].error) worst = i;
    }
    const double tol = std::max(abs_tol, rel_tol * std::abs(value));
    if (error <= tol) {
      return {value, error, static_cast<int>(panels.size())};
    }
    const Panel p = panels[worst];
    const double mid = 0.5 * (p.lo + p.hi);
    if (static_cast<int>(panels.size()) >= max_panels || !(mid > p.lo) ||
        !(mid < p.hi)) {
      throw QuadratureError("integrate: tolerance not met", value, error);
    }
    panels[worst] = make_panel(f, p.lo, mid);
    panels.push_back(make_panel(f, mid, p.hi));
  }
}

}  // namespace

QuadratureResult integrate_detailed(const std::function<double(double)>& f,
                                    double a, double b,
                                    const QuadratureSpec& spec) {
  if (spec.panel_count < 1) {
    throw std::invalid_argument("integrate: panel_count must be positive");
  }
  if (!(spec.abs_tol > 0.0 || spec.rel_tol > 0.0)) {
    throw std::invalid_argument("integrate: need a positive tolerance");
  }
  if (a == b) return {0.0, 0.0, 0};
  if (b < a) {
    QuadratureSpec flipped = spec;
    std::swap(flipped.singular_left, flipped.singular_right);
    QuadratureResult r = integrate_detailed(f, b, a, flipped);
    r.value = -r.value;
    return r;
  }
  if (spec.singular_left && spec.singular_right) {
    const double mid = 0.5 * (a + b);
    QuadratureSpec half = spec;
    half.abs_tol = 0.5 * spec.abs_tol;
    half.singular_right = false;
    QuadratureResult left = integrate_detailed(f, a, mid, half);
    half.singular_left = false;
    half.singular_right = true;
    QuadratureResult right = integrate_detailed(f, mid, b, half);
    return {left.value + right.value, left.error + right.error,
            left.panels + right.panels};
  }
  const double span = std::sqrt(b - a);
  if (spec.singular_left) {
    // weight by the distance actually seen by f, so f(t) ~ c/sqrt(t-a)
    // stays exactly smooth after rounding of a + tau^2
    auto g = [&](double tau) {
      double t = a + tau * tau;
      if (t == a) t = std::nextafter(a, b);
      return 2.0 * std::sqrt(t - a) * f(t);
    };
    return adaptive_gauss(g, 0.0, span, spec.panel_count, spec.abs_tol,
                          spec.rel_tol, spec.max_panels);
  }
  if (spec.singular_right) {
    auto g = [&](double tau) {
      double t = b - tau * tau;
      if (t == b) t = std::nextafter(b, a);
      return 2.0 * std::sqrt(b - t) * f(t);
    };
    return adaptive_gauss(g, 0.0, span, spec.panel_count, spec.abs_tol,
                          spec.rel_tol, spec.max_panels);
  }
  return adaptive_gauss(f, a, b, spec.panel_count, spec.abs_tol, spec.rel_tol,
                        spec.max_panels);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec) {
  return integrate_detailed(f, a, b, spec).value;
}

// ---------------------------------------------------------------------------
// G and its inverse. With s = tan(theta) the integrand becomes
// sqrt(cos(theta)); near theta = pi/2 we switch to u = pi/2 - theta where it
// reads sqrt(sin(u)) with a square-root behaviour at u = 0.

namespace {

double sqrt_cos_integral(double theta) {  // int_0^theta sqrt(cos), theta <= pi/4
  if (theta == 0.0) return 0.0;
  return integrate([](double t) { return std::sqrt(std::cos(t)); }, 0.0, theta,
                   {.panel_count = 2, .abs_tol = 1e-15, .rel_tol = 1e-14});
}

double sqrt_sin_integral(double u) {  // int_0^u sqrt(sin), 0 <= u <= pi/2
  if (u == 0.0) return 0.0;
  return integrate([](double t) { return std::sqrt(std::sin(t)); }, 0.0, u,
                   {.panel_count = 2,
                    .abs_tol = 1e-15,
                    .rel_tol = 1e-14,
                    .singular_left = true});
}

double half_c0() { return sqrt_sin_integral(kPi / 2.0); }

// Safeguarded Newton for a monotone increasing F with derivative dF on
// [lo, hi], solving F(t) = target.
template <class Fn, class Dfn>
double monotone_newton(Fn F, Dfn dF, double target, double lo, double hi) {
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double r = F(t) - target;
    if (r == 0.0) return t;
    if (r > 0.0) {
      hi = t;
    } else {
      lo = t;
    }
    const double d = dF(t);
    double next = (d > 0.0) ? t - r / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 1e-16 * std::max(1.0, std::abs(t))) return next;
    t = next;
  }
  return t;
}

}  // namespace

GProfile::GProfile() : c0_(2.0 * half_c0()), half_(0.5 * c0_) {
  // theta grid on (-pi/2, pi/2), cumulative sqrt(cos) integrals
  const int m = 512;
  std::vector<double> theta;
  for (int k = 1; k < m; ++k) theta.push_back(-kPi / 2.0 + kPi * k / m);
  table_x_.resize(theta.size());
  table_g_.resize(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    table_x_[i] = std::tan(theta[i]);
    table_g_[i] = g_of(table_x_[i], *this);
  }
}

const GProfile& g_profile() {
  static const GProfile prof;
  return prof;
}

double g_of(double x, const GProfile& prof) {
  if (std::isnan(x)) return x;
  const double ax = std::abs(x);
  double g;
  if (ax <= 1.0) {
    g = sqrt_cos_integral(std::atan(ax));
  } else if (std::isinf(ax)) {
    g = prof.half();
  } else {
    g = prof.half() - sqrt_sin_integral(std::atan(1.0 / ax));
  }
  return x < 0.0 ? -g : g;
}

double g_of(double x) { return g_of(x, g_profile()); }

double g_inv(double y, const GProfile& prof) {
  if (!(std::abs(y) < prof.half())) {
    throw RangeError("g_inv: |y| must be below c0/2");
  }
  const double ay = std::abs(y);
  if (ay == 0.0) return 0.0;
  // bracket from the table
  const auto& tg = prof.table_g();
  const auto& tx = prof.table_x();
  auto it = std::upper_bound(tg.begin(), tg.end(), ay);
  const double x_lo = (it == tg.begin()) ? 0.0 : tx[std::distance(tg.begin(), it) - 1];
  const double x_hi = (it == tg.end()) ? std::numeric_limits<double>::infinity()
                                       : tx[std::distance(tg.begin(), it)];
  const double g1 = sqrt_cos_integral(kPi / 4.0);
  double x;
  if (ay <= g1) {
    const double lo = std::atan(std::max(0.0, x_lo));
    const double hi = std::min(kPi / 4.0, std::atan(x_hi));
    const double th = monotone_newton(
        sqrt_cos_integral, [](double t) { return std::sqrt(std::cos(t)); }, ay,
        lo, hi);
    x = std::tan(th);
  } else {
    // solve int_0^u sqrt(sin) = half - |y| for u = atan(1/x)
    const double rest = prof.half() - ay;
    const double u_lo = std::isinf(x_hi) ? 0.0 : std::atan(1.0 / x_hi);
    const double u_hi = std::min(kPi / 4.0, x_lo > 0.0 ? std::atan(1.0 / x_lo)
                                                       : kPi / 4.0);
    const double u = monotone_newton(
        sqrt_sin_integral, [](double t) { return std::sqrt(std::sin(t)); },
        rest, u_lo, u_hi);
    x = 1.0 / std::tan(u);
  }
  return y < 0.0 ? -x : x;
}

double g_inv(double y) { return g_inv(y, g_profile()); }

double compute_c0() { return 2.0 * half_c0(); }

double compute_c0_truncated(double T) {
  auto f = [](double s) { return std::pow(1.0 + s * s, -1.25); };
  double sum = 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (lo < T) {
    hi = std::min(hi, T);
    sum += integrate(f, lo, hi, {.panel_count = 4, .abs_tol = 1e-16, .rel_tol = 1e-14});
    lo = hi;
    hi *= 4.0;
  }
  return 2.0 * (sum + (2.0 / 3.0) * std::pow(T, -1.5));
}

// ---------------------------------------------------------------------------
// cone threshold

double cone_threshold_ratio(double A) {
  if (!(A > 0.0)) throw std::invalid_argument("cone_threshold_ratio: A > 0");
  const double z = -A * A;
  const double num = hyp2f1({1.0, 1.5, 1.75, z});
  const double den = hyp2f1({0.5, 1.0, 0.75, z});
  return A * num / (3.0 * den);
}

double cone_threshold_ratio_quadrature(double A) {
  if (!(A > 0.0)) throw std::invalid_argument("cone_threshold_ratio: A > 0");
  const QuadratureSpec spec{.panel_count = 8,
                            .abs_tol = 1e-15,
                            .rel_tol = 1e-13,
                            .singular_right = true};
  const double num = integrate(
      [A](double t) {
        return t / (std::sqrt(A - t) * std::pow(1.0 + t * t, 1.25));
      },
      0.0, A, spec);
  const double den = integrate(
      [A](double t) {
        return 1.0 / (std::sqrt(A - t) * std::pow(1.0 + t * t, 1.25));
      },
      0.0, A, spec);
  return num / (2.0 * den);
}

double cone_threshold_limit() {
  return gamma_fn(1.75) * gamma_fn(0.25) /
         (3.0 * gamma_fn(0.75) * gamma_fn(0.75) * gamma_fn(1.5));
}

ThresholdSweep cone_threshold_sweep(const SweepOptions& opt) {
  if (!(opt.a_min > 0.0 && opt.a_max > opt.a_min && opt.points >= 3)) {
    throw std::invalid_argument("cone_threshold_sweep: bad sweep range");
  }
  ThresholdSweep out;
  const int n = opt.points;
  out.A.resize(n);
  out.ratio.resize(n);
  const double l0 = std::log(opt.a_min);
  const double l1 = std::log(opt.a_max);
#pragma omp parallel for schedule(static) if (opt.parallel)
  for (int i = 0; i < n; ++i) {
    const double A = std::exp(l0 + (l1 - l0) * i / (n - 1));
    out.A[i] = A;
    out.ratio[i] = cone_threshold_ratio(A);
  }
  out.monotone = true;
  int best = 0;
  for (int i = 0; i < n; ++i) {
    if (i > 0 && !(out.ratio[i] > out.ratio[i - 1])) out.monotone = false;
    if (out.ratio[i] > out.ratio[best]) best = i;
  }
  out.sweep_max = out.ratio[best];
  out.sweep_argmax = out.A[best];
  if (best > 0 && best < n - 1) {
    // golden section in log A on the bracketing triple
    double a = std::log(out.A[best - 1]);
    double b = std::log(out.A[best + 1]);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = cone_threshold_ratio(std::exp(c));
    double fd = cone_threshold_ratio(std::exp(d));
    while (b - a > 1e-10) {
      if (fc > fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - inv_phi * (b - a);
        fc = cone_threshold_ratio(std::exp(c));
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + inv_phi * (b - a);
        fd = cone_threshold_ratio(std::exp(d));
      }
    }
    const double m = 0.5 * (a + b);
    const double fm = cone_threshold_ratio(std::exp(m));
    if (fm > out.sweep_max) {
      out.sweep_max = fm;
      out.sweep_argmax = std::exp(m);
    }
  }
  out.limit = cone_threshold_limit();
  out.sup = std::max(out.sweep_max, out.limit);
  out.error_bound = std::max(1e-5, std::abs(out.sweep_max - out.limit));
  return out;
}

double cone_threshold_sup() {
  static const double sup = cone_threshold_sweep().sup;
  return sup;
}

}  // namespace elastica
