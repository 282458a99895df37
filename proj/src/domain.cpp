#include "gmcsim/domain.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "gmcsim/error.hpp"
#include "gmcsim/quadrature.hpp"

namespace gmc {

namespace {

using cdouble = std::complex<double>;

cdouble to_c(Vec2 p) { return {p.x, p.y}; }

}  // namespace

double Domain::boundary_distance(Vec2 p) const {
  const Vec2 q = to_local(p);
  switch (kind) {
    case DomainKind::unit_disk:
      return scale * (1.0 - q.norm());
    case DomainKind::unit_square:
      return scale * std::min(std::min(q.x, 1.0 - q.x), std::min(q.y, 1.0 - q.y));
  }
  return 0.0;
}

Vec2 Domain::center() const {
  return kind == DomainKind::unit_disk ? to_world({0.0, 0.0}) : to_world({0.5, 0.5});
}

double Domain::diameter() const {
  return kind == DomainKind::unit_disk ? 2.0 * scale : std::numbers::sqrt2 * scale;
}

std::pair<Vec2, Vec2> Domain::bounding_box() const {
  if (kind == DomainKind::unit_disk) return {to_world({-1.0, -1.0}), to_world({1.0, 1.0})};
  return {to_world({0.0, 0.0}), to_world({1.0, 1.0})};
}

Domain unit_disk(Vec2 offset, double scale) {
  if (!(scale > 0)) fail(errc::invalid_argument, "domain scale must be positive");
  return Domain{DomainKind::unit_disk, offset, scale};
}

Domain unit_square(Vec2 offset, double scale) {
  if (!(scale > 0)) fail(errc::invalid_argument, "domain scale must be positive");
  return Domain{DomainKind::unit_square, offset, scale};
}

// ---------------------------------------------------------------------------
// Green function
// ---------------------------------------------------------------------------

namespace {

double green_disk(Vec2 x, Vec2 y) {
  const cdouble xc = to_c(x), yc = to_c(y);
  return std::log(std::abs(1.0 - xc * std::conj(yc))) - std::log(std::abs(xc - yc));
}

double regular_disk(Vec2 x, Vec2 y) {
  return std::log(std::abs(1.0 - to_c(x) * std::conj(to_c(y))));
}

// Square Green function on (0,1)^2 as a single sine series in the x1 axis,
// with the slowly converging part summed in closed form:
//
//   G = 1/2 log( (1 - 2q cos(pi(x1+y1)) + q^2) / (1 - 2q cos(pi(x1-y1)) + q^2) )
//     + 4 sum_j sin(j pi x1) sin(j pi y1)
//         [ sinh(j pi m) sinh(j pi (1-M)) / (j sinh(j pi)) - e^{-j pi d} / (2j) ]
//
// with m = min(x2,y2), M = max(x2,y2), d = M - m, q = e^{-pi d}. The corrected
// terms decay like e^{-j pi (d + 2 min(m, 1-M))}, so the series is summed along
// the axis that maximizes that rate.
double green_square_split(double x1, double x2, double y1, double y2, int order) {
  const double m = std::min(x2, y2), M = std::max(x2, y2);
  const double d = M - m;
  const double q = std::exp(-kPi * d);
  const double num = 1.0 - 2.0 * q * std::cos(kPi * (x1 + y1)) + q * q;
  const double den = 1.0 - 2.0 * q * std::cos(kPi * (x1 - y1)) + q * q;
  double g = 0.5 * std::log(num / den);
  for (int j = 1; j <= order; ++j) {
    const double a = j * kPi * m, b = j * kPi * (1.0 - M), jp = j * kPi;
    // sinh(a) sinh(b) / sinh(a+b+d*j*pi), written with decaying exponentials.
    const double T = (std::exp(a + b - jp) - std::exp(a - b - jp) - std::exp(b - a - jp) +
                      std::exp(-a - b - jp)) /
                     (2.0 * (1.0 - std::exp(-2.0 * jp)));
    const double corr = (T - 0.5 * std::exp(-jp * d)) / j;
    if (corr == 0.0 && j > 8) break;
    g += 4.0 * std::sin(j * kPi * x1) * std::sin(j * kPi * y1) * corr;
  }
  return g;
}

double green_square(Vec2 x, Vec2 y, int order) {
  // Decay exponent of the corrected terms for each choice of summation axis.
  const double rate_x = std::abs(x.y - y.y) + 2.0 * std::min(std::min(x.y, y.y), std::min(1.0 - x.y, 1.0 - y.y));
  const double rate_y = std::abs(x.x - y.x) + 2.0 * std::min(std::min(x.x, y.x), std::min(1.0 - x.x, 1.0 - y.x));
  if (rate_x >= rate_y) return green_square_split(x.x, x.y, y.x, y.y, order);
  return green_square_split(x.y, x.x, y.y, y.x, order);
}

void check_green_args(const Domain& d, Vec2 x, Vec2 y) {
  if (!d.contains(x)) fail(errc::point_outside_domain, "green_function: x");
  if (!d.contains(y)) fail(errc::point_outside_domain, "green_function: y");
}

}  // namespace

double green_function(const Domain& d, Vec2 x, Vec2 y, int series_order) {
  check_green_args(d, x, y);
  const Vec2 xl = d.to_local(x), yl = d.to_local(y);
  if (dist(xl, yl) < 1e-14) fail(errc::green_singularity, "coincident points");
  switch (d.kind) {
    case DomainKind::unit_disk:
      return green_disk(xl, yl);
    case DomainKind::unit_square:
      return green_square(xl, yl, series_order);
  }
  return 0.0;
}

double green_regular_part(const Domain& d, Vec2 x, Vec2 y, int series_order) {
  check_green_args(d, x, y);
  // H transforms as H_{sD+c}(x,y) = H_D(x_local, y_local) + log s.
  const Vec2 xl = d.to_local(x), yl = d.to_local(y);
  if (d.kind == DomainKind::unit_disk) return regular_disk(xl, yl) + std::log(d.scale);
  if (dist(xl, yl) < 1e-9) return std::log(conformal_radius(d, x));
  return green_square(xl, yl, series_order) + std::log(dist(xl, yl)) + std::log(d.scale);
}

// ---------------------------------------------------------------------------
// Conformal radius
// ---------------------------------------------------------------------------

namespace {

// K4 = int_0^1 dt / sqrt(1-t^4); the disk-to-square map constant.
constexpr double kQuarterPeriod = 1.3110287771460599;
// Derivative scale putting the image square at side 1.
constexpr double kSquareMapC = 0.53935260118837936;  // = 1 / (sqrt(2) K4)

cdouble sc_integrand(cdouble t) { return 1.0 / std::sqrt(1.0 - t * t * t * t); }

cdouble gl16(cdouble z0, cdouble z1) {
  const GaussRule& g = gauss_rule(16);
  cdouble s = 0.0;
  for (int i = 0; i < 16; ++i) s += g.w[i] * sc_integrand(z0 + (z1 - z0) * g.x[i]);
  return s * (z1 - z0);
}

cdouble sc_adaptive(cdouble z0, cdouble z1, cdouble whole, int depth) {
  const cdouble mid = 0.5 * (z0 + z1);
  const cdouble left = gl16(z0, mid), right = gl16(mid, z1);
  if (depth > 24 || std::abs(left + right - whole) < 1e-14 * (1.0 + std::abs(left + right)))
    return left + right;
  return sc_adaptive(z0, mid, left, depth + 1) + sc_adaptive(mid, z1, right, depth + 1);
}

// int_0^z dt / sqrt(1 - t^4) along the straight path, |z| < 1.
cdouble sc_integral(cdouble z) { return sc_adaptive(0.0, z, gl16(0.0, z), 0); }

// Disk -> local unit square [0,1]^2 with F(0) = center.
cdouble square_map(cdouble z) {
  const cdouble rot = std::polar(1.0, kPi / 4.0);
  return cdouble(0.5, 0.5) + rot * kSquareMapC * sc_integral(z);
}

cdouble square_map_deriv(cdouble z) {
  const cdouble rot = std::polar(1.0, kPi / 4.0);
  return rot * kSquareMapC / std::sqrt(1.0 - z * z * z * z);
}

// Invert the square map by damped Newton iteration.
cdouble square_map_inverse(Vec2 x) {
  const cdouble target = to_c(x);
  cdouble w = (target - cdouble(0.5, 0.5)) / (std::polar(1.0, kPi / 4.0) * kSquareMapC);
  if (std::abs(w) > 0.95) w *= 0.95 / std::abs(w);
  double res = std::abs(square_map(w) - target);
  for (int it = 0; it < 80; ++it) {
    if (res < 1e-13) return w;
    const cdouble step = (square_map(w) - target) / square_map_deriv(w);
    double damp = 1.0;
    for (int k = 0; k < 30; ++k) {
      cdouble cand = w - damp * step;
      if (std::abs(cand) > 1.0 - 1e-14) cand *= (1.0 - 1e-14) / std::abs(cand);
      const double r = std::abs(square_map(cand) - target);
      if (r < res) {
        w = cand;
        res = r;
        break;
      }
      damp *= 0.5;
      if (k == 29) return w;  // stalled; accept best point
    }
  }
  return w;
}

double conformal_radius_square_local(Vec2 x) {
  const cdouble w = square_map_inverse(x);
  return std::abs(square_map_deriv(w)) * (1.0 - std::norm(w));
}

}  // namespace

double conformal_radius(const Domain& d, Vec2 x) {
  if (!d.contains(x)) fail(errc::point_outside_domain, "conformal_radius");
  const Vec2 q = d.to_local(x);
  switch (d.kind) {
    case DomainKind::unit_disk:
      return d.scale * (1.0 - q.norm2());
    case DomainKind::unit_square:
      return d.scale * conformal_radius_square_local(q);
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Circles clipped to the domain
// ---------------------------------------------------------------------------

bool circle_inside(const Domain& d, Vec2 x, double eps) {
  return d.boundary_distance(x) > eps + d.boundary_tol();
}

std::vector<WeightedPoint> circle_nodes(const Domain& d, Vec2 x, double eps, int M) {
  if (M < 4) fail(errc::invalid_argument, "circle_nodes: M < 4");
  if (!(eps > 0)) fail(errc::invalid_argument, "circle_nodes: eps <= 0");
  if (!d.contains(x)) fail(errc::point_outside_domain, "circle_nodes: center");
  std::vector<WeightedPoint> nodes;
  nodes.reserve(static_cast<std::size_t>(M));
  for (int i = 0; i < M; ++i) {
    const double phi = 2.0 * kPi * i / M;
    const Vec2 p = x + eps * dir_vec(phi);
    if (d.boundary_distance(p) > d.boundary_tol()) nodes.push_back({p, 0.0});
  }
  if (nodes.empty()) fail(errc::empty_circle, "circle outside domain");
  const double w = 1.0 / static_cast<double>(nodes.size());
  for (auto& n : nodes) n.w = w;
  return nodes;
}

std::vector<std::pair<double, double>> interior_arcs(const Domain& d, Vec2 x, double eps) {
  const auto inside = [&](double phi) {
    return d.boundary_distance(x + eps * dir_vec(phi)) > 0.0;
  };
  if (circle_inside(d, x, eps)) return {{0.0, 2.0 * kPi}};
  const int n = 4096;
  std::vector<double> cross;  // refined crossing angles, entering/exiting alternate
  bool prev = inside(0.0);
  const bool first = prev;
  for (int i = 1; i <= n; ++i) {
    const double phi = 2.0 * kPi * i / n;
    const bool cur = inside(phi);
    if (cur != prev) {
      double lo = 2.0 * kPi * (i - 1) / n, hi = phi;
      for (int k = 0; k < 50; ++k) {
        const double mid = 0.5 * (lo + hi);
        if (inside(mid) == prev)
          lo = mid;
        else
          hi = mid;
      }
      cross.push_back(0.5 * (lo + hi));
      prev = cur;
    }
  }
  if (cross.empty()) {
    if (first) return {{0.0, 2.0 * kPi}};
    return {};
  }
  std::vector<std::pair<double, double>> arcs;
  // Pair up crossings into inside intervals, wrapping at 2 pi.
  const std::size_t k = cross.size();
  for (std::size_t i = 0; i < k; ++i) {
    // interval (cross[i], cross[i+1]) is inside iff crossing i enters
    const bool enters = (i % 2 == 0) != first;  // parity: state after cross[i]
    if (enters) {
      const double a = cross[i];
      const double b = i + 1 < k ? cross[i + 1] : cross[0] + 2.0 * kPi;
      arcs.emplace_back(a, b);
    }
  }
  return arcs;
}

// ---------------------------------------------------------------------------
// Chords, line metric, support intervals
// ---------------------------------------------------------------------------

Chord chord_of(const Domain& d, const Line& line) {
  const Vec2 n = line.normal(), t = line.direction();
  const double tol = d.boundary_tol();
  if (d.kind == DomainKind::unit_disk) {
    const Vec2 c = d.center();
    const double s = d.scale;
    const double h = line.u - c.dot(n);  // signed distance of the center from the line
    if (std::abs(h) > s + tol) fail(errc::no_intersection, "line misses disk");
    const double half2 = std::max(0.0, s * s - h * h);
    const double half = std::sqrt(half2);
    const Vec2 foot = c + h * n;
    Chord ch;
    ch.line = line;
    ch.a = foot - half * t;
    ch.b = foot + half * t;
    ch.length = 2.0 * half;
    return ch;
  }
  // Unit square: clip the parameter v of u*n + v*t against both coordinate bands.
  const auto [lo, hi] = d.bounding_box();
  double v0 = -std::numeric_limits<double>::infinity();
  double v1 = std::numeric_limits<double>::infinity();
  const Vec2 p0 = line.point_at(0.0);
  const double p[2] = {p0.x, p0.y}, dv[2] = {t.x, t.y};
  const double lov[2] = {lo.x, lo.y}, hiv[2] = {hi.x, hi.y};
  for (int axis = 0; axis < 2; ++axis) {
    if (std::abs(dv[axis]) < 1e-15) {
      if (p[axis] < lov[axis] - tol || p[axis] > hiv[axis] + tol)
        fail(errc::no_intersection, "line misses square");
      continue;
    }
    double a = (lov[axis] - p[axis]) / dv[axis];
    double b = (hiv[axis] - p[axis]) / dv[axis];
    if (a > b) std::swap(a, b);
    v0 = std::max(v0, a);
    v1 = std::min(v1, b);
  }
  if (v0 > v1 + tol) fail(errc::no_intersection, "line misses square");
  if (v0 > v1) v0 = v1 = 0.5 * (v0 + v1);
  Chord ch;
  ch.line = line;
  ch.a = line.point_at(v0);
  ch.b = line.point_at(v1);
  ch.length = v1 - v0;
  return ch;
}

double line_metric(const Line& a, const Line& b) {
  const double dt = std::abs(a.theta - b.theta);
  return std::abs(a.u - b.u) + std::min(dt, kPi - dt);
}

std::pair<double, double> support_interval(const Domain& d, double theta) {
  const Vec2 n = Line(theta, 0.0).normal();
  if (d.kind == DomainKind::unit_disk) {
    const double c = d.center().dot(n);
    return {c - d.scale, c + d.scale};
  }
  const auto [lo, hi] = d.bounding_box();
  const Vec2 corners[4] = {lo, {hi.x, lo.y}, hi, {lo.x, hi.y}};
  double umin = corners[0].dot(n), umax = umin;
  for (const Vec2& c : corners) {
    umin = std::min(umin, c.dot(n));
    umax = std::max(umax, c.dot(n));
  }
  return {umin, umax};
}

// ---------------------------------------------------------------------------
// Curves
// ---------------------------------------------------------------------------

double Curve::length() const {
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Segment>) {
          return dist(s.a, s.b);
        } else if constexpr (std::is_same_v<T, CircleArc>) {
          return s.radius * (s.phi1 - s.phi0);
        } else {
          double L = 0.0;
          for (std::size_t i = 1; i < s.points.size(); ++i) L += dist(s.points[i - 1], s.points[i]);
          return L;
        }
      },
      shape_);
}

Vec2 Curve::point_at(double arc) const {
  return std::visit(
      [arc](const auto& s) -> Vec2 {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Segment>) {
          const double L = dist(s.a, s.b);
          const double t = L > 0 ? std::clamp(arc / L, 0.0, 1.0) : 0.0;
          return s.a + t * (s.b - s.a);
        } else if constexpr (std::is_same_v<T, CircleArc>) {
          const double phi = std::clamp(s.phi0 + arc / s.radius, s.phi0, s.phi1);
          return s.center + s.radius * dir_vec(phi);
        } else {
          double left = arc;
          for (std::size_t i = 1; i < s.points.size(); ++i) {
            const double seg = dist(s.points[i - 1], s.points[i]);
            if (left <= seg || i + 1 == s.points.size()) {
              const double t = seg > 0 ? std::clamp(left / seg, 0.0, 1.0) : 0.0;
              return s.points[i - 1] + t * (s.points[i] - s.points[i - 1]);
            }
            left -= seg;
          }
          return s.points.empty() ? Vec2{} : s.points.back();
        }
      },
      shape_);
}

}  // namespace gmc
