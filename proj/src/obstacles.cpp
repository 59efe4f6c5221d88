#include "elastica/obstacles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "elastica/envelope.hpp"
#include "elastica/specfun.hpp"

namespace elastica {

double ConeObstacle::eval(double x) const {
  if (x == 0.5) return peak;
  if (x <= 0.5) return slope() * (x - valley);
  return slope() * (1.0 - valley - x);
}

Obstacle::Obstacle(ObstacleKind kind, std::vector<Vec2> nodes)
    : kind_(kind), nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw std::invalid_argument("Obstacle: need 2 nodes");
  if (nodes_.front().x != 0.0 || nodes_.back().x != 1.0) {
    throw std::invalid_argument("Obstacle: breakpoints must span [0,1]");
  }
  sup_ = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    if (!std::isfinite(nodes_[k].y)) {
      throw std::invalid_argument("Obstacle: non-finite value");
    }
    sup_ = std::max(sup_, nodes_[k].y);
    if (k + 1 < nodes_.size()) {
      const double dx = nodes_[k + 1].x - nodes_[k].x;
      if (!(dx > 0.0)) {
        throw std::invalid_argument("Obstacle: x must be strictly increasing");
      }
      slope_bound_ =
          std::max(slope_bound_, std::abs((nodes_[k + 1].y - nodes_[k].y) / dx));
    }
  }
}

Obstacle Obstacle::cone(double peak, double valley) {
  if (!(peak > 0.0) || !(valley > 0.0 && valley < 0.5)) {
    throw std::invalid_argument("cone obstacle: need A > 0 and 0 < s < 1/2");
  }
  const ConeObstacle c{peak, valley};
  Obstacle o(ObstacleKind::cone,
             {{0.0, c.eval(0.0)}, {0.5, peak}, {1.0, c.eval(1.0)}});
  o.cone_ = c;
  o.slope_bound_ = c.slope();
  return o;
}

Obstacle Obstacle::piecewise_linear(std::vector<Vec2> breakpoints) {
  return Obstacle(ObstacleKind::piecewise_linear, std::move(breakpoints));
}

Obstacle Obstacle::tabulated(std::vector<double> samples) {
  const std::size_t m = samples.size();
  if (m < 2) throw std::invalid_argument("tabulated obstacle: need 2 samples");
  std::vector<Vec2> nodes(m);
  for (std::size_t k = 0; k < m; ++k) {
    nodes[k] = {k + 1 == m ? 1.0 : static_cast<double>(k) / (m - 1), samples[k]};
  }
  return Obstacle(ObstacleKind::tabulated, std::move(nodes));
}

double Obstacle::eval(double x) const {
  if (cone_) return cone_->eval(std::clamp(x, 0.0, 1.0));
  x = std::clamp(x, 0.0, 1.0);
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x,
                             [](double v, const Vec2& p) { return v < p.x; });
  if (it == nodes_.end()) return nodes_.back().y;
  if (it == nodes_.begin()) return nodes_.front().y;
  const Vec2 b = *it;
  const Vec2 a = *(it - 1);
  const double w = (x - a.x) / (b.x - a.x);
  return (1.0 - w) * a.y + w * b.y;
}

double Obstacle::slope_right(double x) const {
  x = std::clamp(x, 0.0, 1.0);
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x,
                             [](double v, const Vec2& p) { return v < p.x; });
  if (it == nodes_.end()) --it;
  if (it == nodes_.begin()) ++it;
  const Vec2 b = *it;
  const Vec2 a = *(it - 1);
  return (b.y - a.y) / (b.x - a.x);
}

double Obstacle::slope_left(double x) const {
  x = std::clamp(x, 0.0, 1.0);
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), x,
                             [](const Vec2& p, double v) { return p.x < v; });
  if (it == nodes_.begin()) ++it;
  if (it == nodes_.end()) --it;
  const Vec2 b = *it;
  const Vec2 a = *(it - 1);
  return (b.y - a.y) / (b.x - a.x);
}

std::vector<double> Obstacle::check_points() const {
  std::vector<double> pts;
  for (std::size_t k = 1; k + 1 < nodes_.size(); ++k) pts.push_back(nodes_[k].x);
  if (cone_) {
    pts = {cone_->valley, 0.5, 1.0 - cone_->valley};
  }
  return pts;
}

std::vector<Diagnostic> admissibility_check(const Obstacle& o) {
  std::vector<Diagnostic> out;
  const double p0 = o.eval(0.0);
  const double p1 = o.eval(1.0);
  out.push_back({"psi(0) < 0", p0 < 0.0, p0, ""});
  out.push_back({"psi(1) < 0", p1 < 0.0, p1, ""});
  out.push_back({"max psi > 0", o.sup_value() > 0.0, o.sup_value(), ""});
  out.push_back({"bounded one-sided slopes", std::isfinite(o.slope_bound()),
                 o.slope_bound(), "max absolute chord slope"});
  return out;
}

bool is_admissible(const Obstacle& o) {
  const auto d = admissibility_check(o);
  return std::all_of(d.begin(), d.end(),
                     [](const Diagnostic& x) { return x.passed; });
}

namespace {

void update(Feasibility& f, double margin, double x) {
  if (margin < f.margin) {
    f.margin = margin;
    f.worst_x = x;
  }
}

}  // namespace

Feasibility feasible(const SampledGraph& g, const Obstacle& o, double tol) {
  Feasibility f;
  f.margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= g.n(); ++i) update(f, g[i] - o.eval(g.x(i)), g.x(i));
  for (double x : o.check_points()) update(f, g.eval(x) - o.eval(x), x);
  f.feasible = f.margin >= -tol;
  return f;
}

Feasibility feasible(const CapShape& cs, const Obstacle& o, double tol) {
  Feasibility f = feasible(cs.top, o, tol);
  // the stubs start at height zero on the lines x = 0 and x = 1
  update(f, -o.eval(0.0), 0.0);
  update(f, -o.eval(1.0), 1.0);
  f.feasible = f.margin >= -tol;
  return f;
}

Feasibility feasible(const PolyCurve& c, const Obstacle& o, double tol) {
  Feasibility f;
  f.margin = std::numeric_limits<double>::infinity();
  const auto p = c.points();
  for (const Vec2& q : p) update(f, q.y - o.eval(q.x), q.x);
  for (double x : o.check_points()) {
    for (int i = 0; i < c.n(); ++i) {
      const double xa = std::min(p[i].x, p[i + 1].x);
      const double xb = std::max(p[i].x, p[i + 1].x);
      if (x < xa || x > xb || xb == xa) continue;
      const double w = (x - p[i].x) / (p[i + 1].x - p[i].x);
      update(f, (1.0 - w) * p[i].y + w * p[i + 1].y - o.eval(x), x);
    }
  }
  f.feasible = f.margin >= -tol;
  return f;
}

ConeDiagnostic cone_nonexistence_diagnostic(const ConeObstacle& c,
                                            double band) {
  ConeDiagnostic d;
  d.threshold = cone_threshold_sup();
  d.uncertainty = band;
  d.verdict = c.peak > d.threshold ? ConeVerdict::graph_minimizer_impossible
                                   : ConeVerdict::graph_minimizer_possible;
  d.margin_warning = std::abs(c.peak - d.threshold) <= band;
  return d;
}

}  // namespace elastica
