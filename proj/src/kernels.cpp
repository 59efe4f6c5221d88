#include "elastica/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace elastica {

namespace {

// signed distance of x outside [0, 1]: negative left of 0, positive right of 1
double outside(double x) {
  if (x < 0.0) return x;
  if (x > 1.0) return x - 1.0;
  return 0.0;
}

}  // namespace

std::vector<double> obstacle_kinks(const Obstacle& o) {
  std::vector<double> k;
  const auto& bp = o.breakpoints();
  for (std::size_t i = 1; i + 1 < bp.size(); ++i) k.push_back(bp[i].x);
  return k;
}

int kink_segment(std::span<const Vec2> p, double xk) {
  const int n = static_cast<int>(p.size()) - 1;
  auto it = std::upper_bound(p.begin(), p.end(), xk,
                             [](double v, const Vec2& q) { return v < q.x; });
  int j = static_cast<int>(it - p.begin()) - 1;
  if (j < 0 || j >= n) return -1;
  if (!(p[j + 1].x > p[j].x)) return -1;
  return j;
}

ObjectiveParts objective_kernel(std::span<const Vec2> p, const Obstacle& o,
                                const PenaltyWeights& w,
                                std::vector<double>* grad, Exec exec) {
  const int n = static_cast<int>(p.size()) - 1;
  const bool par = exec == Exec::parallel;
  std::vector<double> len(n);
  std::vector<Vec2> tan(n);
  std::vector<Vec2> d2(static_cast<std::size_t>(n) + 1);
  std::vector<double> obs(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<double> mono(n, 0.0);
  std::vector<double> bound(static_cast<std::size_t>(n) + 1, 0.0);

#pragma omp parallel for schedule(static) if (par)
  for (int i = 0; i < n; ++i) {
    const Vec2 d = p[i + 1] - p[i];
    len[i] = norm(d);
    tan[i] = len[i] > 0.0 ? (1.0 / len[i]) * d : Vec2{};
    const double back = -d.x;
    mono[i] = back > 0.0 ? back * back : 0.0;
  }
#pragma omp parallel for schedule(static) if (par)
  for (int i = 1; i < n; ++i) {
    d2[i] = p[i + 1] - 2.0 * p[i] + p[i - 1];
    const double r = o.eval(p[i].x) - p[i].y;
    obs[i] = r > 0.0 ? r * r : 0.0;
    const double out = outside(p[i].x);
    bound[i] = out * out;
  }

  // serial reductions in index order
  double L = 0.0;
  double B = 0.0;
  double obs_sum = 0.0;
  double mono_sum = 0.0;
  for (int i = 0; i < n; ++i) L += len[i];
  for (int i = 1; i < n; ++i) B += dot(d2[i], d2[i]);
  for (int i = 1; i < n; ++i) obs_sum += obs[i];
  for (int i = 0; i < n; ++i) mono_sum += mono[i];
  for (int i = 1; i < n; ++i) mono_sum += bound[i];
  if (!(L > 0.0)) throw ImmersionError("objective: zero length curve");
  const double step = L / n;
  double speed_sum = 0.0;
  for (int i = 0; i < n; ++i) speed_sum += (len[i] - step) * (len[i] - step);

  const std::vector<double> kinks = obstacle_kinks(o);
  double kink_sum = 0.0;
  for (double xk : kinks) {
    const int j = kink_segment(p, xk);
    if (j < 0) continue;
    const double wgt = (xk - p[j].x) / (p[j + 1].x - p[j].x);
    const double r = o.eval(xk) - (p[j].y + wgt * (p[j + 1].y - p[j].y));
    if (r > 0.0) kink_sum += r * r;
  }

  const double n3 = static_cast<double>(n) * n * n;
  ObjectiveParts out;
  out.bending = n3 * B / (L * L * L);
  out.length = L;
  out.obstacle = w.obstacle * (obs_sum + kink_sum);
  out.speed = w.speed * speed_sum;
  out.monotone = w.monotone * mono_sum;
  out.total = out.bending + w.epsilon * L + out.obstacle + out.speed + out.monotone;

  if (grad) {
    grad->assign(2 * (static_cast<std::size_t>(n) + 1), 0.0);
    std::vector<double>& g = *grad;
    const double cb = n3 / (L * L * L);
    const double cl = -3.0 * n3 * B / (L * L * L * L) + w.epsilon;
#pragma omp parallel for schedule(static) if (par)
    for (int j = 0; j <= n; ++j) {
      const Vec2 dm = j >= 1 ? d2[j - 1] : Vec2{};
      const Vec2 dj = d2[j];
      const Vec2 dp = j + 1 <= n ? d2[j + 1] : Vec2{};
      // d2[0] and d2[n] are zero: only interior second differences count
      const Vec2 gb = 2.0 * (dm - 2.0 * dj + dp);
      const Vec2 tm = j >= 1 ? tan[j - 1] : Vec2{};
      const Vec2 tj = j < n ? tan[j] : Vec2{};
      const Vec2 gl = tm - tj;
      const double sm = j >= 1 ? len[j - 1] - step : 0.0;
      const double sj = j < n ? len[j] - step : 0.0;
      Vec2 gj = cb * gb + cl * gl + 2.0 * w.speed * (sm * tm - sj * tj);
      if (j >= 1 && j < n) {
        const double r = o.eval(p[j].x) - p[j].y;
        if (r > 0.0) {
          gj += 2.0 * w.obstacle * r * Vec2{o.slope_right(p[j].x), -1.0};
        }
      }
      // monotonicity: segments j-1 and j
      if (j >= 1) {
        const double back = p[j - 1].x - p[j].x;
        if (back > 0.0) gj.x -= 2.0 * w.monotone * back;
      }
      if (j < n) {
        const double back = p[j].x - p[j + 1].x;
        if (back > 0.0) gj.x += 2.0 * w.monotone * back;
      }
      if (j >= 1 && j < n) gj.x += 2.0 * w.monotone * outside(p[j].x);
      g[2 * j] = gj.x;
      g[2 * j + 1] = gj.y;
    }
    for (double xk : kinks) {
      const int j = kink_segment(p, xk);
      if (j < 0) continue;
      const double dx = p[j + 1].x - p[j].x;
      const double wgt = (xk - p[j].x) / dx;
      const double dy = p[j + 1].y - p[j].y;
      const double r = o.eval(xk) - (p[j].y + wgt * dy);
      if (!(r > 0.0)) continue;
      // y_interp = y_j + wgt dy, wgt = (xk - x_j)/dx
      const double dw_dxj = (xk - p[j + 1].x) / (dx * dx);
      const double dw_dxk = -(xk - p[j].x) / (dx * dx);
      const double c = -2.0 * w.obstacle * r;
      g[2 * j] += c * dw_dxj * dy;
      g[2 * j + 1] += c * (1.0 - wgt);
      g[2 * (j + 1)] += c * dw_dxk * dy;
      g[2 * (j + 1) + 1] += c * wgt;
    }
  }
  return out;
}

}  // namespace elastica
