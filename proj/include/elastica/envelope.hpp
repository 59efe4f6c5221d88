#pragma once

// Cap-shape projection: vertical stubs at x = 0 and x = 1 plus a concave
// top graph, obtained from a pseudograph through its upper profile and the
// least concave majorant of that profile.

#include <vector>

#include "elastica/geometry.hpp"

namespace elastica {

struct CapShape {
  double h_left = 0.0;
  double h_right = 0.0;
  SampledGraph top;                 // top[0] = h_left, top[n] = h_right
  bool concave_certified = false;
  // Vertices of the exact least concave majorant of the source polyline,
  // when the shape came from one. Empty for shapes built from a graph.
  std::vector<Vec2> hull;
};

// Least concave majorant of a sampled profile (monotone-chain upper hull).
SampledGraph upper_concave_envelope(const SampledGraph& profile);

// Upper hull of points sorted by x (ties allowed); returns hull vertices.
std::vector<Vec2> upper_hull(const std::vector<Vec2>& pts);

struct CapOptions {
  int n_grid = -1;        // uniform grid for the top; default: curve's n
  double x_tol = 1e-12;   // |x| <= x_tol counts as x = 0 (same at 1)
  double end_tol = 1e-9;  // endpoint position tolerance
};

// Profile handed to the envelope: the polyline's upper profile at the grid
// nodes, raised onto the vertex hull. hull_out (if non-null) receives the
// hull vertices.
SampledGraph upper_profile(const PolyCurve& c, const CapOptions& opt = {},
                           std::vector<Vec2>* hull_out = nullptr);

// Throws NotMonotoneError when x decreases by more than x_tol.
CapShape cap_project(const PolyCurve& c, const CapOptions& opt = {});

// Stub - top - stub concatenation before any resampling; the top is the
// exact hull when present, else the sampled graph.
PolyCurve cap_concat(const CapShape& cs);
// cap_concat refined along local cubics and resampled to constant speed.
PolyCurve cap_to_curve(const CapShape& cs);

// Lift every interior vertex onto the least concave majorant of the
// polyline's vertices; vertices on the end lines are left as stubs. The
// parametrisation (vertex count and x positions) is kept.
PolyCurve cap_lift(const PolyCurve& c, double x_tol = 1e-12);

// Max second difference of the top (certifies concavity when <= tol).
double max_second_difference(const SampledGraph& g);

}  // namespace elastica
