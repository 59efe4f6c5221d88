#pragma once

// Penalized minimization of E_eps = L^{-3} int |gamma''|^2 + eps L over
// constant-speed polylines from (0,0) to (1,0) lying above an obstacle,
// with continuation in eps.

#include <optional>
#include <string>
#include <vector>

#include "elastica/analysis.hpp"
#include "elastica/envelope.hpp"
#include "elastica/geometry.hpp"
#include "elastica/kernels.hpp"
#include "elastica/obstacles.hpp"

namespace elastica {

struct SolverConfig {
  int n = 1024;
  double eps_start = 1.0;
  double eps_factor = 0.5;
  double eps_min = 1e-4;
  double obstacle_penalty = 1e8;
  double speed_penalty = 1.0;   // mu = speed_penalty * n^3
  double monotone_penalty = 1e8;
  int max_iters = 200;          // per eps stage
  double grad_tol = 1e-6;       // max-norm over free coordinates
  double armijo_c = 1e-4;
  double backtrack = 0.5;
  int max_backtracks = 40;
  int cap_project_every = 25;
  double vertical_slope = 20.0;
  double stub_tol = 1e-3;       // stub height that counts as a vertical end
  double alpha_margin = 5e-3;   // one-sidedness is asserted when alpha < c0^2 - margin
  double contact_tol = -1.0;    // default 1e-6 (1 + sup psi)
  double asymmetry = 0.0;       // deterministic tilt of the initial guess
  Exec exec = Exec::parallel;

  void validate() const;  // throws std::invalid_argument
  PenaltyWeights weights(double epsilon) const;
};

ObjectiveParts discrete_objective(const PolyCurve& c, const Obstacle& o,
                                  double epsilon, const SolverConfig& cfg,
                                  std::vector<double>* grad = nullptr);

struct IterLog {
  int stage = 0;
  double epsilon = 0.0;
  int iter = 0;
  double objective = 0.0;
  double grad_norm = 0.0;
  double step = 0.0;
  std::string event;  // "", "project", "project-rejected"
};

enum class StageStatus { converged, max_iters, stalled };

struct StageResult {
  PolyCurve curve;
  double epsilon = 0.0;
  ObjectiveParts parts;
  int iters = 0;
  double grad_norm = 0.0;
  StageStatus status = StageStatus::max_iters;
  int projections_accepted = 0;
  int projections_rejected = 0;
};

StageResult minimize_stage(const PolyCurve& start, const Obstacle& o,
                           double epsilon, const SolverConfig& cfg,
                           std::vector<IterLog>* log = nullptr,
                           int stage_index = 0);

enum class Classification { graph, left_vertical, right_vertical, both_vertical };

struct EpsRecord {
  double epsilon = 0.0;
  double e_eps = 0.0;    // E + eps L
  double energy = 0.0;   // E
  double length = 0.0;
  StageStatus status = StageStatus::max_iters;
  int iters = 0;
};

struct BoundsCheck {
  double energy_limit = 0.0;     // 1.02 c0^2
  bool energy_ok = false;
  std::optional<LengthBound> length_bound;
  bool length_ok = false;        // L <= bound (1 + 2%)
  bool one_sided_applicable = false;  // alpha < c0^2 - alpha_margin
  bool one_sided_ok = true;      // at most one vertical end, when applicable
  bool touching = false;
  bool feasible = false;
  double feasibility_margin = 0.0;
  std::optional<double> oscillation_bound;  // graphs only
  bool oscillation_ok = true;
};

struct SolveReport {
  double alpha = 0.0;
  EnergyBreakdown breakdown;
  double length = 0.0;
  std::vector<EpsRecord> eps_trajectory;
  std::vector<int> contact_nodes;  // indices on the cap top grid
  double slope_left = 0.0;         // top-graph end slopes, rising inward > 0
  double slope_right = 0.0;
  bool vertical_left = false;
  bool vertical_right = false;
  Classification classification = Classification::graph;
  std::optional<ELReport> el;
  BoundsCheck bounds;
  PolyCurve curve{{{0.0, 0.0}, {1.0, 0.0}}};
  CapShape cap{0.0, 0.0, SampledGraph(std::vector<double>(9, 0.0)), false, {}};
  double symmetry_defect = 0.0;
  double speed_deviation = 0.0;
  bool converged = false;
  std::vector<IterLog> log;
};

PolyCurve initial_guess(const Obstacle& o, int n);

// Clamp x to [0,1] and make it monotone, then raise nodes (and chords
// across kinks) to psi. Lifting onto the vertex hull is left out on
// purpose: near a vertical end, x-noise at the penalty tolerance turns into
// large y-lifts.
PolyCurve terminal_projection(const PolyCurve& c, const Obstacle& o);

SolveReport solve(const Obstacle& o, const SolverConfig& cfg);
// Also hands back the curve reached at the end of every eps stage.
SolveReport solve(const Obstacle& o, const SolverConfig& cfg,
                  std::vector<PolyCurve>* stage_curves);

const char* to_string(Classification c);
const char* to_string(StageStatus s);

}  // namespace elastica
