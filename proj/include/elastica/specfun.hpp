#pragma once

// Special functions and quadrature used throughout the library: Gamma,
// the Gauss hypergeometric function 2F1 on the real line z < 1, adaptive
// Gauss-Legendre quadrature with inverse-square-root endpoint handling, the
// slope-oscillation function G(x) = int_0^x (1+s^2)^(-5/4) ds with its
// inverse, and the cone nonexistence threshold.

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace elastica {

class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class RangeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double estimate, double error)
      : std::runtime_error(what), estimate_(estimate), error_(error) {}
  double estimate() const { return estimate_; }
  double error() const { return error_; }

 private:
  double estimate_;
  double error_;
};

// Gamma function. Throws PoleError at 0, -1, -2, ...
double gamma_fn(double x);
// 1/Gamma(x); zero at the poles of Gamma.
double rgamma(double x);

struct Hyp2F1Params {
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;
  double z = 0.0;
};

// Raw power series sum_n (a)_n (b)_n / ((c)_n n!) z^n. Requires |z| < 1.
// Throws ConvergenceError when the terms have not decayed within max_terms.
double hyp2f1_series(const Hyp2F1Params& p, std::size_t max_terms = 100000);

// 2F1(a,b;c;z) for real z < 1. Uses the series near the origin, Pfaff's
// transformation for z < -1/2 and the 1-z connection formula close to 1.
double hyp2f1(const Hyp2F1Params& p);

struct PfaffResult {
  Hyp2F1Params params;     // (a, c-b, c, z/(z-1))
  double prefactor_exponent;  // -a
  double prefactor;        // (1-z)^(-a)
};

// 2F1(a,b;c;z) = (1-z)^(-a) 2F1(a, c-b; c; z/(z-1)).
PfaffResult pfaff_transform(const Hyp2F1Params& p);

struct QuadratureSpec {
  int panel_count = 8;
  double abs_tol = 1e-13;
  double rel_tol = 1e-12;
  bool singular_left = false;   // integrand ~ (t-a)^(-1/2)
  bool singular_right = false;  // integrand ~ (b-t)^(-1/2)
  int max_panels = 4096;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int panels = 0;
};

// Adaptive composite Gauss-Legendre. Declared square-root endpoint
// singularities are removed with t = a + tau^2 (resp. b - tau^2).
// Throws QuadratureError (carrying the best estimate) if the tolerance
// max(abs_tol, rel_tol*|I|) is not met.
QuadratureResult integrate_detailed(const std::function<double(double)>& f,
                                    double a, double b,
                                    const QuadratureSpec& spec = {});
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec = {});

// Tabulated G(x) = int_0^x (1+s^2)^(-5/4) ds. Immutable once built.
class GProfile {
 public:
  GProfile();

  double c0() const { return c0_; }
  double half() const { return half_; }
  const std::vector<double>& table_x() const { return table_x_; }
  const std::vector<double>& table_g() const { return table_g_; }

 private:
  double c0_;
  double half_;
  std::vector<double> table_x_;
  std::vector<double> table_g_;
};

// Shared profile, built on first use.
const GProfile& g_profile();

double g_of(double x);
double g_of(double x, const GProfile& prof);
// Inverse of G on (-c0/2, c0/2); RangeError outside.
double g_inv(double y, const GProfile& prof);
double g_inv(double y);

// c0 = int_R (1+s^2)^(-5/4) ds via s = tan(theta).
double compute_c0();
// Oracle route: 2 * (int_0^T ... ds + (2/3) T^(-3/2)).
double compute_c0_truncated(double T);

// (1/3) A 2F1(1,3/2;7/4;-A^2) / 2F1(1/2,1;3/4;-A^2).
double cone_threshold_ratio(double A);
// The same ratio as a quotient of two singular integrals.
double cone_threshold_ratio_quadrature(double A);
// A -> infinity limit: (1/3) Gamma(7/4)Gamma(1/4) / (Gamma(3/4)^2 Gamma(3/2)).
double cone_threshold_limit();

struct ThresholdSweep {
  double sup = 0.0;            // max(sweep max, limit)
  double sweep_max = 0.0;
  double sweep_argmax = 0.0;
  double limit = 0.0;
  double error_bound = 1e-5;
  bool monotone = false;       // ratio increasing on the sweep
  std::vector<double> A;
  std::vector<double> ratio;
};

struct SweepOptions {
  double a_min = 1e-3;
  double a_max = 1e7;
  int points = 400;
  bool parallel = true;  // the serial path is the reference for tests
};

ThresholdSweep cone_threshold_sweep(const SweepOptions& opt = {});
double cone_threshold_sup();

}  // namespace elastica
