#pragma once

// Independent reference implementations used only by the tests. None of
// these call into the library's numerics, so agreement is evidence rather
// than tautology.

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace oracle {

struct Fixture {
  double value = 0.0;
  double tolerance = 0.0;
  std::string source;
};

// Table generated offline with mpmath (tests/data/gen_fixtures.py).
const std::map<std::string, Fixture>& fixtures();
const Fixture& fixture(const std::string& name);

// Least concave majorant at the nodes by gift wrapping: from each hull
// vertex take the farthest node of maximal slope. O(n^2). Fills between
// vertices with the same interpolation formula as the library so the
// comparison can be exact.
std::vector<double> majorant_giftwrap(const std::vector<double>& y);

// Straight from the definition: max over all chords (a, b) spanning j.
// O(n^3), small n only.
std::vector<double> majorant_definition(const std::vector<double>& y);

// Composite Simpson with m (even) panels.
double simpson(const std::function<double(double)>& f, double a, double b, int m);

// 2F1 power series summed in long double; |z| well below 1.
long double hyp2f1_direct(long double a, long double b, long double c, long double z);

// G(x) = int_0^x (1+s^2)^(-5/4) ds by Simpson with many panels.
double g_simpson(double x);

// Central finite differences of f at x with step h.
std::vector<double> fd_gradient(const std::function<double(const std::vector<double>&)>& f,
                                std::vector<double> x, double h);

// Discrete bending energy int kappa^2 ds of an open polyline from the
// circumscribed-circle curvature at interior vertices (ends dropped).
double circumcircle_energy(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace oracle
