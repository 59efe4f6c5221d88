#pragma once

// Closed-form candidate curves and bounds: the constant-energy-density
// comparison curve U_0, the shooting construction for cone obstacles, the
// length bounds and Euler-Lagrange residual diagnostics for graphs.

#include <optional>
#include <vector>

#include "elastica/envelope.hpp"
#include "elastica/geometry.hpp"
#include "elastica/obstacles.hpp"
#include "elastica/specfun.hpp"

namespace elastica {

// U_0(x) = (2/c0) (1 + G^{-1}(c0/2 - c0 x)^2)^{-1/4}, zero at x = 0, 1.
double comparison_profile(double x);

// Stubs of height S and top S + U_0 on a uniform grid of n intervals.
CapShape comparison_curve(double S, int n);

// The same curve sampled at n+1 points equally spaced in arclength, using
// its tangent-angle parametrisation (exact points on the curve).
PolyCurve comparison_polyline(double S, int n);

// L_top = (1/c0) int_R (1+t^2)^{-3/4} dt, by quadrature.
double comparison_top_length();

struct ConeCandidate {
  double m0 = 0.0;   // u'(0)
  double m1 = 0.0;   // u' at the end of the tabulated half
  double C0 = 0.0;
  double C1 = 0.0;
  std::vector<double> x;       // grid on [0, 1/2]
  std::vector<double> slope;   // u'
  std::vector<double> height;  // u, u(0) = 0
  double ode_residual = 0.0;   // relative max-norm residual of the ODE
  std::optional<double> peak_x;       // first zero of u'
  std::optional<double> peak_height;  // u at peak_x
};

// F0(z) = int_z^{m0} (m0 - t)^{-1/2} (1 + t^2)^{-5/4} dt.
double shooting_f0(double z, double m0);

// Left half u'(x) = F0^{-1}(sqrt(2|C0|) x) on [0, 1/2] with n intervals.
// C0 = 0 gives the straight line of slope m0. Throws std::domain_error when
// the slope would diverge before x = 1/2.
ConeCandidate cone_shooting(double m0, double C0, int n);
// Right half via the mirrored construction: m1 < 0, C1 >= 0, grid on [1/2, 1]
// with u(1) = 0.
ConeCandidate cone_shooting_right(double m1, double C1, int n);

// Smallest |C0| admissible for a left half reaching u'(1/2) <= 0; returned
// as the (negative) C0 itself.
double shooting_minimal_c0(double m0);
// (1/sqrt(2|C0|)) int_0^{m0} t (m0 - t)^{-1/2} (1 + t^2)^{-5/4} dt.
double shooting_peak_formula(double m0, double C0);

double cone_height_bound(double m0);

double length_bound_one_sided(double m);
double length_bound_touching(const Obstacle& o);

struct LengthBound {
  double value = 0.0;
  double graph_part = 0.0;     // G^{-1}(...) + sqrt(1 + G^{-1}(...)^2)
  double touching_part = 0.0;  // 2(sup psi + |psi'|) + 1
  bool near_degenerate = false;
};

// Throws RangeError when alpha >= c0^2.
LengthBound length_bound_main(double alpha, const GProfile& prof,
                              const Obstacle& o);

struct ELOptions {
  double contact_tol = -1.0;  // default 1e-6 (1 + sup psi)
  int margin = -1;            // nodes trimmed at interval ends, default max(4, n/64)
};

struct ELReport {
  std::vector<double> v;         // u'' / (1 + u'^2)^{5/4}
  std::vector<double> lagrange;  // v' / (1 + u'^2)^{5/4}
  double v_left = 0.0;
  double v_right = 0.0;
  std::vector<int> contact_nodes;
  std::vector<double> interval_constants;  // mean lagrange per interval
  double piecewise_const_dev = 0.0;
  double penalized_residual = 0.0;
};

ELReport el_residuals(const SampledGraph& g, const Obstacle& o, double epsilon,
                      const ELOptions& opt = {});

}  // namespace elastica
