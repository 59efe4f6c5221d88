#pragma once

// Discrete graphs and planar polylines with their energy and length
// functionals.

#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace elastica {

class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ImmersionError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class NotMonotoneError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class NotConstantSpeedError : public GeometryError {
 public:
  NotConstantSpeedError(const std::string& what, double deviation)
      : GeometryError(what), deviation_(deviation) {}
  double deviation() const { return deviation_; }

 private:
  double deviation_;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
  Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
  friend Vec2 operator+(Vec2 a, Vec2 b) { return a += b; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return a -= b; }
  friend Vec2 operator*(double s, Vec2 a) { return a *= s; }
  friend Vec2 operator*(Vec2 a, double s) { return a *= s; }
  friend bool operator==(Vec2 a, Vec2 b) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// u sampled at x_i = i/n, i = 0..n.
class SampledGraph {
 public:
  static constexpr int kMinResolution = 8;

  explicit SampledGraph(std::vector<double> values);
  static SampledGraph from_function(const std::function<double(double)>& u,
                                    int n);

  int n() const { return static_cast<int>(values_.size()) - 1; }
  double h() const { return 1.0 / n(); }
  double x(int i) const { return static_cast<double>(i) / n(); }
  double operator[](int i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }

  // Central differences inside, second-order one-sided at the ends.
  double slope(int i) const;
  double second(int i) const;
  double curvature(int i) const;

  // Piecewise-linear evaluation.
  double eval(double x) const;

 private:
  std::vector<double> values_;
};

// Polyline p_i at parameter t_i = i/n.
class PolyCurve {
 public:
  explicit PolyCurve(std::vector<Vec2> points);

  int n() const { return static_cast<int>(points_.size()) - 1; }
  double h() const { return 1.0 / n(); }
  Vec2 operator[](int i) const { return points_[i]; }
  std::span<const Vec2> points() const { return points_; }

  double length() const;
  std::vector<double> segment_lengths() const;
  double min_segment_length() const;

  // Finite-difference derivatives in t (same stencils as SampledGraph).
  Vec2 velocity(int i) const;
  Vec2 acceleration(int i) const;
  Vec2 normal(int i) const;

  // ImmersionError if a segment is shorter than floor * L.
  void check_immersed(double floor = 1e-9) const;

 private:
  std::vector<Vec2> points_;
};

struct EnergyBreakdown {
  double bending = 0.0;
  double length = 0.0;
  double epsilon = 0.0;
  double total = 0.0;
};

double graph_energy(const SampledGraph& g);

// int <gamma'', N>^2 / |gamma'|^3 dt by the trapezoid rule in t.
EnergyBreakdown curve_energy(const PolyCurve& c, double epsilon = 0.0);

// (1/L^3) int |gamma''|^2 dt + eps L; valid for constant-speed curves only.
EnergyBreakdown constant_velocity_energy(const PolyCurve& c, double epsilon,
                                         double max_speed_deviation = 0.01);

// Max relative deviation of segment lengths from their mean.
double speed_deviation(const PolyCurve& c);

// Resample on the same polyline so that all chords are equal.
PolyCurve to_constant_speed(const PolyCurve& c, int n_out = -1);

PolyCurve graph_to_curve(const SampledGraph& g);

enum class Interp { linear, cubic };

// Requires strictly increasing x from 0 to 1. The cubic variant uses local
// four-point Lagrange interpolation.
SampledGraph curve_to_graph(const PolyCurve& c, int n_grid = -1,
                            Interp interp = Interp::linear);

// (G(u'(b2)) - G(u'(b1)))^2, a lower bound for graph_energy.
double energy_oscillation_bound(const SampledGraph& g, int b1, int b2);

}  // namespace elastica
