#pragma once

#include <cmath>
#include <numbers>
#include <utility>
#include <variant>
#include <vector>

namespace gmc {

inline constexpr double kPi = std::numbers::pi_v<double>;

struct Vec2 {
  double x{0.0};
  double y{0.0};

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator+(Vec2 r) const { return {x + r.x, y + r.y}; }
  constexpr Vec2 operator-(Vec2 r) const { return {x - r.x, y - r.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  friend constexpr Vec2 operator*(double s, Vec2 v) { return {v.x * s, v.y * s}; }
  constexpr double dot(Vec2 r) const { return x * r.x + y * r.y; }
  double norm() const { return std::hypot(x, y); }
  constexpr double norm2() const { return x * x + y * y; }
  friend constexpr bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
};

inline double dist(Vec2 a, Vec2 b) { return (a - b).norm(); }

// Unit vector in direction theta.
inline Vec2 dir_vec(double theta) { return {std::cos(theta), std::sin(theta)}; }

// Line in direction theta (mod pi) at signed perpendicular displacement u from
// the origin: { u*n + v*d : v in R } with d = (cos t, sin t), n = (-sin t, cos t).
struct Line {
  double theta{0.0};
  double u{0.0};

  Line() = default;
  Line(double theta_, double u_) : theta(reduce_mod_pi(theta_)), u(u_) {}

  Vec2 direction() const { return dir_vec(theta); }
  Vec2 normal() const { return {-std::sin(theta), std::cos(theta)}; }
  Vec2 point_at(double v) const { return u * normal() + v * direction(); }

  static double reduce_mod_pi(double t) {
    t = std::fmod(t, kPi);
    if (t < 0) t += kPi;
    return t;
  }
};

struct Chord {
  Line line;
  Vec2 a;
  Vec2 b;
  double length{0.0};
};

// Curves are arc-length parameterized over [0, length()].
struct Segment {
  Vec2 a;
  Vec2 b;
};

struct CircleArc {
  Vec2 center;
  double radius{0.0};
  double phi0{0.0};  // start angle
  double phi1{0.0};  // end angle, phi1 > phi0
};

struct Polyline {
  std::vector<Vec2> points;
};

class Curve {
 public:
  explicit Curve(Segment s) : shape_(s) {}
  explicit Curve(CircleArc a) : shape_(a) {}
  explicit Curve(Polyline p) : shape_(std::move(p)) {}

  double length() const;
  Vec2 point_at(double s) const;  // s in [0, length()]

 private:
  std::variant<Segment, CircleArc, Polyline> shape_;
};

}  // namespace gmc
