#pragma once

// Obstacles psi on [0,1]: symmetric cones, piecewise-linear breakpoint
// lists and tabulated samples. Every kind is stored as a piecewise-linear
// function, so the one-sided slopes are the chord slopes of its pieces.

#include <optional>
#include <string>
#include <vector>

#include "elastica/geometry.hpp"

namespace elastica {

struct CapShape;

enum class ObstacleKind { cone, piecewise_linear, tabulated };

struct ConeObstacle {
  double peak = 1.0;    // A
  double valley = 0.25; // s, psi(s) = 0

  double eval(double x) const;
  double slope() const { return peak / (0.5 - valley); }
};

class Obstacle {
 public:
  static Obstacle cone(double peak, double valley);
  static Obstacle cone(const ConeObstacle& c) { return cone(c.peak, c.valley); }
  // Breakpoints (x_k, psi_k) covering [0,1], x strictly increasing.
  static Obstacle piecewise_linear(std::vector<Vec2> breakpoints);
  // Samples on a uniform grid x_k = k/(m-1).
  static Obstacle tabulated(std::vector<double> samples);

  ObstacleKind kind() const { return kind_; }
  const std::optional<ConeObstacle>& cone_params() const { return cone_; }
  const std::vector<Vec2>& breakpoints() const { return nodes_; }

  double eval(double x) const;
  // One-sided derivatives; at a breakpoint these differ.
  double slope_right(double x) const;
  double slope_left(double x) const;

  double sup_value() const { return sup_; }
  double slope_bound() const { return slope_bound_; }
  // Points where a feasibility scan must look besides the grid: interior
  // breakpoints, plus s, 1/2, 1-s for cones.
  std::vector<double> check_points() const;

 private:
  Obstacle(ObstacleKind kind, std::vector<Vec2> nodes);

  ObstacleKind kind_;
  std::vector<Vec2> nodes_;
  std::optional<ConeObstacle> cone_;
  double sup_ = 0.0;
  double slope_bound_ = 0.0;
};

struct Diagnostic {
  std::string name;
  bool passed = false;
  double value = 0.0;
  std::string detail;
};

std::vector<Diagnostic> admissibility_check(const Obstacle& o);
bool is_admissible(const Obstacle& o);

struct Feasibility {
  bool feasible = false;
  double margin = 0.0;   // min over checked points of u - psi
  double worst_x = 0.0;
};

Feasibility feasible(const SampledGraph& g, const Obstacle& o,
                     double tol = 1e-9);
Feasibility feasible(const CapShape& cs, const Obstacle& o, double tol = 1e-9);
// Polyline version: nodes plus check points by linear interpolation.
Feasibility feasible(const PolyCurve& c, const Obstacle& o, double tol = 1e-9);

enum class ConeVerdict { graph_minimizer_possible, graph_minimizer_impossible };

struct ConeDiagnostic {
  ConeVerdict verdict = ConeVerdict::graph_minimizer_possible;
  double threshold = 0.0;
  double uncertainty = 0.0;
  bool margin_warning = false;  // |A - threshold| within the uncertainty band
};

ConeDiagnostic cone_nonexistence_diagnostic(const ConeObstacle& c,
                                            double band = 1e-4);

}  // namespace elastica
