#include "oracles.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

const std::map<std::string, Fixture>& fixtures() {
  static const std::map<std::string, Fixture> table = [] {
    std::map<std::string, Fixture> t;
    std::ifstream in(ELASTICA_FIXTURES);
    if (!in) throw std::runtime_error("cannot open fixtures at " ELASTICA_FIXTURES);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream is(line);
      std::string name;
      Fixture f;
      is >> name >> f.value >> f.tolerance;
      std::getline(is >> std::ws, f.source);
      t.emplace(name, f);
    }
    return t;
  }();
  return table;
}

const Fixture& fixture(const std::string& name) {
  const auto& t = fixtures();
  auto it = t.find(name);
  if (it == t.end()) throw std::out_of_range("no fixture " + name);
  return it->second;
}

std::vector<double> majorant_giftwrap(const std::vector<double>& y) {
  using boost::multiprecision::cpp_rational;
  const int n = static_cast<int>(y.size()) - 1;
  std::vector<double> env(y);
  // doubles are dyadic rationals, so slopes compare exactly
  const std::vector<cpp_rational> yq(y.begin(), y.end());
  int a = 0;
  while (a < n) {
    int best = a + 1;
    for (int k = a + 2; k <= n; ++k) {
      // k at least as steep as best (ties go to the farther node); decided in
      // floating point when clearly away from zero, else in rationals
      const double l = static_cast<double>(best - a) * (y[k] - y[a]);
      const double r = (y[best] - y[a]) * static_cast<double>(k - a);
      const double slack = 1e-14 * (std::abs(l) + std::abs(r));
      bool steeper;
      if (l - r > slack) steeper = true;
      else if (r - l > slack) steeper = false;
      else steeper = (yq[k] - yq[a]) * (best - a) >= (yq[best] - yq[a]) * (k - a);
      if (steeper) best = k;
    }
    for (int j = a + 1; j < best; ++j) {
      const double v = y[a] + (y[best] - y[a]) * (static_cast<double>(j - a) / (best - a));
      env[j] = std::max(v, y[j]);
    }
    a = best;
  }
  return env;
}

std::vector<double> majorant_definition(const std::vector<double>& y) {
  const int n = static_cast<int>(y.size()) - 1;
  std::vector<double> env(y);
  for (int a = 0; a <= n; ++a) {
    for (int b = a + 2; b <= n; ++b) {
      for (int j = a + 1; j < b; ++j) {
        const double v = y[a] + (y[b] - y[a]) * (static_cast<double>(j - a) / (b - a));
        env[j] = std::max(env[j], v);
      }
    }
  }
  return env;
}

double simpson(const std::function<double(double)>& f, double a, double b, int m) {
  if (m % 2) ++m;
  const double h = (b - a) / m;
  double s = f(a) + f(b);
  for (int i = 1; i < m; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

long double hyp2f1_direct(long double a, long double b, long double c, long double z) {
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 0; k < 20000; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z;
    sum += term;
    if (std::fabs(term) < 1e-21L * std::fabs(sum)) return sum;
  }
  throw std::runtime_error("hyp2f1_direct: no convergence");
}

double g_simpson(double x) {
  return simpson([](double s) { return std::pow(1.0 + s * s, -1.25); }, 0.0, x, 20000);
}

std::vector<double> fd_gradient(const std::function<double(const std::vector<double>&)>& f,
                                std::vector<double> x, double h) {
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    x[i] = xi + h;
    const double fp = f(x);
    x[i] = xi - h;
    const double fm = f(x);
    x[i] = xi;
    g[i] = (fp - fm) / (2 * h);
  }
  return g;
}

double circumcircle_energy(const std::vector<double>& x, const std::vector<double>& y) {
  double e = 0.0;
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    const double ax = x[i] - x[i - 1], ay = y[i] - y[i - 1];
    const double bx = x[i + 1] - x[i], by = y[i + 1] - y[i];
    const double cx = x[i + 1] - x[i - 1], cy = y[i + 1] - y[i - 1];
    const double la = std::hypot(ax, ay), lb = std::hypot(bx, by), lc = std::hypot(cx, cy);
    const double kappa = 2.0 * (ax * by - ay * bx) / (la * lb * lc);
    e += kappa * kappa * 0.5 * (la + lb);
  }
  return e;
}

}  // namespace oracle
