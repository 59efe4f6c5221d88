#pragma once

// Discrete penalized energy of a polyline and its gradient. The parallel
// path evaluates per-node terms concurrently and reduces them serially in
// index order, so it is bitwise identical to the serial reference.

#include <span>
#include <vector>

#include "elastica/geometry.hpp"
#include "elastica/obstacles.hpp"

namespace elastica {

enum class Exec { serial, parallel };

struct PenaltyWeights {
  double epsilon = 0.0;
  double obstacle = 1e8;   // nu
  double speed = 1e9;      // mu
  double monotone = 1e8;
};

struct ObjectiveParts {
  double bending = 0.0;   // n^3 B / L^3, B = sum |p_{i+1} - 2 p_i + p_{i-1}|^2
  double length = 0.0;
  double obstacle = 0.0;  // node and kink penalties
  double speed = 0.0;
  double monotone = 0.0;  // backward x steps and x outside [0,1]
  double total = 0.0;
};

// grad (if non-null) receives 2(n+1) entries ordered x0, y0, x1, y1, ...
// including the fixed end nodes.
ObjectiveParts objective_kernel(std::span<const Vec2> p, const Obstacle& o,
                                const PenaltyWeights& w,
                                std::vector<double>* grad,
                                Exec exec = Exec::parallel);

// Interior obstacle breakpoints where a chord may cut below psi.
std::vector<double> obstacle_kinks(const Obstacle& o);

// Segment j (nodes j, j+1) whose x-range contains xk, or -1.
int kink_segment(std::span<const Vec2> p, double xk);

}  // namespace elastica
