#include "elastica/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

namespace elastica {

void SolverConfig::validate() const {
  if (n < 16) throw std::invalid_argument("SolverConfig: n must be >= 16");
  if (!(eps_start > 0.0)) throw std::invalid_argument("SolverConfig: eps_start must be > 0");
  if (!(eps_factor > 0.0 && eps_factor < 1.0)) {
    throw std::invalid_argument("SolverConfig: eps_factor must lie in (0,1)");
  }
  if (!(eps_min >= 0.0)) throw std::invalid_argument("SolverConfig: eps_min must be >= 0");
  if (!(obstacle_penalty > 0.0 && speed_penalty > 0.0 && monotone_penalty > 0.0)) {
    throw std::invalid_argument("SolverConfig: penalties must be > 0");
  }
  if (!(alpha_margin >= 0.0)) throw std::invalid_argument("SolverConfig: alpha_margin must be >= 0");
  if (!(grad_tol > 0.0)) throw std::invalid_argument("SolverConfig: grad_tol must be > 0");
  if (max_iters < 1) throw std::invalid_argument("SolverConfig: max_iters must be >= 1");
  if (!(backtrack > 0.0 && backtrack < 1.0) || !(armijo_c > 0.0 && armijo_c < 0.5)) {
    throw std::invalid_argument("SolverConfig: bad line-search parameters");
  }
}

PenaltyWeights SolverConfig::weights(double epsilon) const {
  const double n3 = static_cast<double>(n) * n * n;
  return {epsilon, obstacle_penalty, speed_penalty * n3, monotone_penalty};
}

ObjectiveParts discrete_objective(const PolyCurve& c, const Obstacle& o,
                                  double epsilon, const SolverConfig& cfg,
                                  std::vector<double>* grad) {
  return objective_kernel(c.points(), o, cfg.weights(epsilon), grad, cfg.exec);
}

const char* to_string(Classification c) {
  switch (c) {
    case Classification::graph: return "graph";
    case Classification::left_vertical: return "left_vertical";
    case Classification::right_vertical: return "right_vertical";
    case Classification::both_vertical: return "both_vertical";
  }
  return "?";
}

const char* to_string(StageStatus s) {
  switch (s) {
    case StageStatus::converged: return "converged";
    case StageStatus::max_iters: return "max_iters";
    case StageStatus::stalled: return "stalled";
  }
  return "?";
}

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;
using Triplet = Eigen::Triplet<double>;

// Newton model H = S + U M U^T with S sparse (banded) and U = [grad B, grad L]
// restricted to the free nodes 1..n-1 (unknown 2(j-1) + {0,1}).
struct NewtonModel {
  SpMat S;
  Eigen::Matrix<double, Eigen::Dynamic, 2> U;
  Eigen::Matrix2d M;
};

NewtonModel newton_model(std::span<const Vec2> p, const Obstacle& o,
                         const PenaltyWeights& w) {
  const int n = static_cast<int>(p.size()) - 1;
  const int dim = 2 * (n - 1);
  auto idx = [](int node, int comp) { return 2 * (node - 1) + comp; };
  auto free_node = [n](int node) { return node >= 1 && node <= n - 1; };

  std::vector<double> len(n);
  std::vector<Vec2> tan(n);
  double L = 0.0;
  for (int i = 0; i < n; ++i) {
    const Vec2 d = p[i + 1] - p[i];
    len[i] = norm(d);
    tan[i] = len[i] > 0.0 ? (1.0 / len[i]) * d : Vec2{};
    L += len[i];
  }
  std::vector<Vec2> d2(static_cast<std::size_t>(n) + 1);
  double B = 0.0;
  for (int i = 1; i < n; ++i) {
    d2[i] = p[i + 1] - 2.0 * p[i] + p[i - 1];
    B += dot(d2[i], d2[i]);
  }
  const double n3 = static_cast<double>(n) * n * n;
  const double L2 = L * L;
  const double cb = n3 / (L2 * L);
  const double step = L / n;

  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(n) * 64);
  auto add = [&](int a, int ca, int b, int cb_, double v) {
    if (free_node(a) && free_node(b) && v != 0.0) {
      trip.emplace_back(idx(a, ca), idx(b, cb_), v);
    }
  };

  // bending: cb * 2 D^T D, one (1,-2,1) stencil per interior node
  const double stencil[3] = {1.0, -2.0, 1.0};
  for (int i = 1; i < n; ++i) {
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        const double v = 2.0 * cb * stencil[a] * stencil[b];
        add(i - 1 + a, 0, i - 1 + b, 0, v);
        add(i - 1 + a, 1, i - 1 + b, 1, v);
      }
    }
  }
  // per-segment length Hessians and the speed penalty's outer products
  const double cl = -3.0 * n3 * B / (L2 * L2) + w.epsilon;
  for (int i = 0; i < n; ++i) {
    if (!(len[i] > 0.0)) continue;
    const Vec2 t = tan[i];
    const double a = (cl + 2.0 * w.speed * (len[i] - step)) / len[i];
    const double tt[2][2] = {{t.x * t.x, t.x * t.y}, {t.y * t.x, t.y * t.y}};
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        const double proj = (r == c ? 1.0 : 0.0) - tt[r][c];
        const double v = a * proj + 2.0 * w.speed * tt[r][c];
        add(i, r, i, c, v);
        add(i + 1, r, i + 1, c, v);
        add(i, r, i + 1, c, -v);
        add(i + 1, r, i, c, -v);
      }
    }
    if (p[i].x - p[i + 1].x > 0.0) {
      const double k = 2.0 * w.monotone;
      add(i, 0, i, 0, k);
      add(i + 1, 0, i + 1, 0, k);
      add(i, 0, i + 1, 0, -k);
      add(i + 1, 0, i, 0, -k);
    }
  }
  for (int j = 1; j < n; ++j) {
    if (p[j].x < 0.0 || p[j].x > 1.0) add(j, 0, j, 0, 2.0 * w.monotone);
    if (o.eval(p[j].x) - p[j].y > 0.0) {
      const double s = o.slope_right(p[j].x);
      const double k = 2.0 * w.obstacle;
      add(j, 0, j, 0, k * s * s);
      add(j, 0, j, 1, -k * s);
      add(j, 1, j, 0, -k * s);
      add(j, 1, j, 1, k);
    }
  }
  for (double xk : obstacle_kinks(o)) {
    const int j = kink_segment(p, xk);
    if (j < 0) continue;
    const double dx = p[j + 1].x - p[j].x;
    const double wgt = (xk - p[j].x) / dx;
    const double dy = p[j + 1].y - p[j].y;
    if (!(o.eval(xk) - (p[j].y + wgt * dy) > 0.0)) continue;
    // Gauss-Newton term on the interpolated height
    const double gy[4] = {(xk - p[j + 1].x) / (dx * dx) * dy, 1.0 - wgt,
                          -(xk - p[j].x) / (dx * dx) * dy, wgt};
    const int node[4] = {j, j, j + 1, j + 1};
    const int comp[4] = {0, 1, 0, 1};
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        add(node[a], comp[a], node[b], comp[b], 2.0 * w.obstacle * gy[a] * gy[b]);
      }
    }
  }

  NewtonModel m;
  m.S.resize(dim, dim);
  m.S.setFromTriplets(trip.begin(), trip.end());
  m.U.resize(dim, 2);
  for (int j = 1; j < n; ++j) {
    const Vec2 gb = 2.0 * (d2[j - 1] - 2.0 * d2[j] + (j + 1 < n ? d2[j + 1] : Vec2{}));
    const Vec2 gl = tan[j - 1] - tan[j];
    m.U(idx(j, 0), 0) = gb.x;
    m.U(idx(j, 1), 0) = gb.y;
    m.U(idx(j, 0), 1) = gl.x;
    m.U(idx(j, 1), 1) = gl.y;
  }
  const double off = -3.0 * n3 / (L2 * L2);
  m.M << 0.0, off, off, 12.0 * n3 * B / (L2 * L2 * L) - 2.0 * w.speed / n;
  return m;
}

// Solve (S + lambda I + U M U^T) d = -g by Woodbury; false if the factor
// or the capacitance matrix is singular.
bool newton_direction(const NewtonModel& m, const Vec& g, double lambda, Vec& d) {
  SpMat A = m.S;
  for (int k = 0; k < A.rows(); ++k) A.coeffRef(k, k) += lambda;
  Eigen::SimplicialLDLT<SpMat> ldlt;
  ldlt.compute(A);
  if (ldlt.info() != Eigen::Success) return false;
  const Vec z = ldlt.solve(g);
  const Eigen::Matrix<double, Eigen::Dynamic, 2> Y = ldlt.solve(m.U);
  const Eigen::Matrix2d cap = m.M.inverse() + m.U.transpose() * Y;
  const double det = cap.determinant();
  if (!std::isfinite(det) || std::abs(det) < 1e-300) return false;
  d = -(z - Y * cap.inverse() * (m.U.transpose() * z));
  return d.allFinite();
}

Vec free_gradient(const std::vector<double>& g) {
  const int dim = static_cast<int>(g.size()) - 4;
  Vec out(dim);
  for (int k = 0; k < dim; ++k) out[k] = g[k + 2];
  return out;
}

std::vector<Vec2> moved(std::span<const Vec2> p, const Vec& d, double t) {
  std::vector<Vec2> q(p.begin(), p.end());
  for (std::size_t j = 1; j + 1 < q.size(); ++j) {
    q[j].x += t * d[2 * (j - 1)];
    q[j].y += t * d[2 * (j - 1) + 1];
  }
  return q;
}

double safe_objective(std::span<const Vec2> p, const Obstacle& o,
                      const PenaltyWeights& w, Exec exec) {
  try {
    const double f = objective_kernel(p, o, w, nullptr, exec).total;
    return std::isfinite(f) ? f : std::numeric_limits<double>::infinity();
  } catch (const GeometryError&) {
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace

StageResult minimize_stage(const PolyCurve& start, const Obstacle& o,
                           double epsilon, const SolverConfig& cfg,
                           std::vector<IterLog>* log, int stage_index) {
  cfg.validate();
  const PenaltyWeights w = cfg.weights(epsilon);
  std::vector<Vec2> p(start.points().begin(), start.points().end());
  StageResult res{start, epsilon, {}, 0, 0.0, StageStatus::max_iters, 0, 0};

  double lambda = 1e-6;
  std::vector<double> graw;
  ObjectiveParts parts = objective_kernel(p, o, w, &graw, cfg.exec);
  int it = 0;
  for (; it < cfg.max_iters; ++it) {
    const Vec g = free_gradient(graw);
    const double gnorm = g.lpNorm<Eigen::Infinity>();
    res.grad_norm = gnorm;
    if (gnorm <= cfg.grad_tol) {
      res.status = StageStatus::converged;
      break;
    }
    const NewtonModel model = newton_model(p, o, w);
    bool accepted = false;
    bool decrement_converged = false;
    double step = 0.0;
    double f_new = parts.total;
    for (int attempt = 0; attempt < 12 && !accepted; ++attempt) {
      Vec d;
      if (!newton_direction(model, g, lambda, d) || !(g.dot(d) < 0.0)) {
        lambda = std::max(lambda * 10.0, 1e-6);
        continue;
      }
      const double slope = g.dot(d);
      // the predicted decrease is below what double precision can resolve
      if (-slope <= 1e-13 * (1.0 + std::abs(parts.total))) {
        decrement_converged = true;
        break;
      }
      double t = 1.0;
      for (int k = 0; k < cfg.max_backtracks; ++k) {
        const std::vector<Vec2> q = moved(p, d, t);
        const double f = safe_objective(q, o, w, cfg.exec);
        if (f <= parts.total + cfg.armijo_c * t * slope) {
          p = q;
          f_new = f;
          step = t;
          accepted = true;
          break;
        }
        t *= cfg.backtrack;
      }
      if (!accepted) {
        lambda = std::max(lambda * 10.0, 1e-6);
      } else if (t == 1.0) {
        lambda = std::max(lambda / 4.0, 1e-12);
      } else {
        lambda *= 2.0;
      }
    }
    if (decrement_converged) {
      res.status = StageStatus::converged;
      break;
    }
    if (!accepted) {
      res.status = StageStatus::stalled;
      break;
    }
    const double f_old = parts.total;
    parts = objective_kernel(p, o, w, &graw, cfg.exec);
    if (log) log->push_back({stage_index, epsilon, it, parts.total, gnorm, step, ""});

    if (cfg.cap_project_every > 0 && (it + 1) % cfg.cap_project_every == 0) {
      try {
        const PolyCurve proj =
            to_constant_speed(cap_lift(PolyCurve(p)), static_cast<int>(p.size()) - 1);
        std::vector<double> gp;
        const ObjectiveParts pp = objective_kernel(proj.points(), o, w, &gp, cfg.exec);
        if (pp.total <= parts.total + 1e-9) {
          p.assign(proj.points().begin(), proj.points().end());
          parts = pp;
          graw = std::move(gp);
          ++res.projections_accepted;
          if (log) log->push_back({stage_index, epsilon, it, parts.total, gnorm, 0.0, "project"});
        } else {
          ++res.projections_rejected;
          if (log) {
            log->push_back({stage_index, epsilon, it, pp.total, gnorm, 0.0, "project-rejected"});
          }
        }
      } catch (const GeometryError&) {
        ++res.projections_rejected;
      }
    }
    // objective no longer moves at double precision
    if (std::abs(f_old - f_new) <= 1e-15 * std::abs(f_old) && step == 1.0) {
      const Vec g2 = free_gradient(graw);
      res.grad_norm = g2.lpNorm<Eigen::Infinity>();
      res.status = res.grad_norm <= cfg.grad_tol ? StageStatus::converged
                                                 : StageStatus::stalled;
      ++it;
      break;
    }
  }
  res.iters = it;
  res.curve = PolyCurve(std::move(p));
  res.parts = parts;
  return res;
}

PolyCurve initial_guess(const Obstacle& o, int n) {
  return comparison_polyline(std::max(o.sup_value(), 0.0), n);
}

PolyCurve terminal_projection(const PolyCurve& c, const Obstacle& o) {
  std::vector<Vec2> p(c.points().begin(), c.points().end());
  const int n = static_cast<int>(p.size()) - 1;
  double run = 0.0;
  for (int j = 1; j < n; ++j) {
    p[j].x = std::clamp(p[j].x, 0.0, 1.0);
    run = std::max(run, p[j].x);
    p[j].x = run;
    p[j].y = std::max(p[j].y, o.eval(p[j].x));
  }
  for (double xk : obstacle_kinks(o)) {
    const int j = kink_segment(p, xk);
    if (j < 0) continue;
    const double wgt = (xk - p[j].x) / (p[j + 1].x - p[j].x);
    const double deficit = o.eval(xk) - (p[j].y + wgt * (p[j + 1].y - p[j].y));
    if (!(deficit > 0.0)) continue;
    // lift the movable ends of the chord so the interpolant gains deficit
    const bool a = j >= 1;
    const bool b = j + 1 <= n - 1;
    const double gain = (a ? 1.0 - wgt : 0.0) + (b ? wgt : 0.0);
    if (gain <= 0.0) continue;
    if (a) p[j].y += deficit / gain;
    if (b) p[j + 1].y += deficit / gain;
  }
  return PolyCurve(std::move(p));
}

SolveReport solve(const Obstacle& o, const SolverConfig& cfg) {
  return solve(o, cfg, nullptr);
}

SolveReport solve(const Obstacle& o, const SolverConfig& cfg,
                  std::vector<PolyCurve>* stage_curves) {
  cfg.validate();
  SolveReport rep;
  PolyCurve cur = initial_guess(o, cfg.n);
  if (cfg.asymmetry != 0.0) {
    // shear the top towards one side; stays above psi for small tilts
    std::vector<Vec2> q(cur.points().begin(), cur.points().end());
    for (auto& v : q) v.y += cfg.asymmetry * v.y * (1.0 - v.x);
    cur = to_constant_speed(PolyCurve(std::move(q)), cfg.n);
  }

  std::vector<double> eps_list;
  for (double e = cfg.eps_start; e > cfg.eps_min; e *= cfg.eps_factor) eps_list.push_back(e);
  eps_list.push_back(cfg.eps_min);

  StageStatus last = StageStatus::max_iters;
  double eps_final = cfg.eps_min;
  for (std::size_t k = 0; k < eps_list.size(); ++k) {
    const double eps = eps_list[k];
    StageResult st = minimize_stage(cur, o, eps, cfg, &rep.log, static_cast<int>(k));
    cur = st.curve;
    if (stage_curves) stage_curves->push_back(cur);
    last = st.status;
    eps_final = eps;
    rep.eps_trajectory.push_back({eps, st.parts.bending + eps * st.parts.length,
                                  st.parts.bending, st.parts.length, st.status,
                                  st.iters});
  }
  rep.converged = last == StageStatus::converged;

  rep.curve = terminal_projection(cur, o);
  rep.speed_deviation = speed_deviation(rep.curve);
  const ObjectiveParts fin = discrete_objective(rep.curve, o, eps_final, cfg);
  rep.alpha = fin.bending;
  rep.length = fin.length;
  rep.breakdown = {fin.bending, fin.length, eps_final,
                   fin.bending + eps_final * fin.length};

  CapOptions copt;
  copt.n_grid = cfg.n;
  copt.x_tol = 1e-7;  // stub nodes wander at the penalty tolerance
  rep.cap = cap_project(rep.curve, copt);
  const SampledGraph& top = rep.cap.top;
  const int m = top.n();
  rep.slope_left = (top[1] - top[0]) * m;
  rep.slope_right = (top[m - 1] - top[m]) * m;
  rep.vertical_left = rep.slope_left > cfg.vertical_slope || rep.cap.h_left > cfg.stub_tol;
  rep.vertical_right = rep.slope_right > cfg.vertical_slope || rep.cap.h_right > cfg.stub_tol;
  if (rep.vertical_left && rep.vertical_right) {
    rep.classification = Classification::both_vertical;
  } else if (rep.vertical_left) {
    rep.classification = Classification::left_vertical;
  } else if (rep.vertical_right) {
    rep.classification = Classification::right_vertical;
  } else {
    rep.classification = Classification::graph;
  }

  const double tol = cfg.contact_tol > 0.0 ? cfg.contact_tol
                                           : 1e-6 * (1.0 + std::abs(o.sup_value()));
  for (int i = 0; i <= m; ++i) {
    if (std::abs(top[i] - o.eval(top.x(i))) <= tol) rep.contact_nodes.push_back(i);
  }
  for (int i = 0; i <= m; ++i) {
    rep.symmetry_defect = std::max(rep.symmetry_defect, std::abs(top[i] - top[m - i]));
  }

  const double c0 = g_profile().c0();
  BoundsCheck& bc = rep.bounds;
  bc.energy_limit = 1.02 * c0 * c0;
  bc.energy_ok = rep.alpha <= bc.energy_limit;
  const Feasibility fz = feasible(rep.curve, o, 1e-6);
  bc.feasible = fz.feasible;
  bc.feasibility_margin = fz.margin;
  bc.touching = fz.margin <= tol;
  if (rep.alpha < c0 * c0) {
    bc.length_bound = length_bound_main(rep.alpha, g_profile(), o);
    bc.length_ok = rep.length <= bc.length_bound->value * 1.02;
  }
  bc.one_sided_applicable = rep.alpha < c0 * c0 - cfg.alpha_margin;
  if (bc.one_sided_applicable) {
    bc.one_sided_ok = rep.classification != Classification::both_vertical;
  }

  if (rep.classification == Classification::graph) {
    try {
      const SampledGraph g = curve_to_graph(rep.curve, cfg.n, Interp::cubic);
      ELOptions eo;
      eo.contact_tol = tol;
      rep.el = el_residuals(g, o, eps_final, eo);
      bc.oscillation_bound = energy_oscillation_bound(g, 0, g.n());
      bc.oscillation_ok = graph_energy(g) + 1e-6 >= *bc.oscillation_bound;
    } catch (const GeometryError&) {
      // not a strict graph at grid resolution: no graph diagnostics
    }
  }
  return rep;
}

}  // namespace elastica
