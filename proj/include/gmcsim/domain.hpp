#pragma once

#include <utility>
#include <vector>

#include "gmcsim/geometry.hpp"

namespace gmc {

enum class DomainKind { unit_disk, unit_square };

// A supported planar domain: the unit disk {|p| < 1} or the open unit square
// (0,1)^2, translated by `offset` and scaled by `scale` (> 0). Both are convex
// with the regularity needed by the samplers; membership predicates use the
// tolerance 1e-10 * scale.
struct Domain {
  DomainKind kind{DomainKind::unit_disk};
  Vec2 offset{0.0, 0.0};
  double scale{1.0};

  Vec2 to_local(Vec2 p) const { return (p - offset) / scale; }
  Vec2 to_world(Vec2 q) const { return offset + q * scale; }

  double boundary_tol() const { return 1e-10 * scale; }
  // Signed distance to the boundary in world units; positive inside.
  double boundary_distance(Vec2 p) const;
  bool contains(Vec2 p) const { return boundary_distance(p) > boundary_tol(); }
  bool contains_closed(Vec2 p) const { return boundary_distance(p) > -boundary_tol(); }

  Vec2 center() const;
  double diameter() const;
  std::pair<Vec2, Vec2> bounding_box() const;
};

Domain unit_disk(Vec2 offset = {0.0, 0.0}, double scale = 1.0);
Domain unit_square(Vec2 offset = {0.0, 0.0}, double scale = 1.0);

// Dirichlet Green function in the -log|x-y| normalization, invariant under
// the domain's similarity transform. The disk value is closed-form; the square
// uses a sine series of `series_order` terms with the singular part summed in
// closed form, exact to ~1e-12 for points further than ~2/series_order from
// the boundary.
double green_function(const Domain& d, Vec2 x, Vec2 y, int series_order = 128);

// Regular part H(x,y) = G(x,y) + log|x-y|, finite on the diagonal where it
// equals log R(x, D). Harmonic in each argument on the whole domain.
double green_regular_part(const Domain& d, Vec2 x, Vec2 y, int series_order = 128);

// Conformal radius R(x, D) = |f'(0)| for f: disk -> D, f(0) = x. Satisfies
// dist(x, bd D) <= R <= 4 dist(x, bd D).
double conformal_radius(const Domain& d, Vec2 x);

struct WeightedPoint {
  Vec2 p;
  double w;
};

// M equally spaced quadrature nodes on the circle |y-x| = eps clipped to the
// domain; nodes falling outside are dropped and the remaining weights are
// uniform and sum to 1. Throws "empty-circle" when no node survives.
std::vector<WeightedPoint> circle_nodes(const Domain& d, Vec2 x, double eps, int M);

// True iff the closed disk B(x, eps) lies inside the domain, so the circle
// needs no clipping.
bool circle_inside(const Domain& d, Vec2 x, double eps);

// Angular intervals [phi0, phi1) of the circle around x of radius eps that lie
// inside the domain. Empty result means the circle misses the domain.
std::vector<std::pair<double, double>> interior_arcs(const Domain& d, Vec2 x, double eps);

// Intersection segment of a line with the closed domain. A tangent line gives
// a zero-length chord; a non-intersecting line throws "no-intersection".
Chord chord_of(const Domain& d, const Line& line);

// d((theta,u),(theta',u')) = |u-u'| + min(|dt|, pi - |dt|) with angles mod pi.
double line_metric(const Line& a, const Line& b);

// Range of displacements u for which the line in direction theta meets the
// closed domain.
std::pair<double, double> support_interval(const Domain& d, double theta);

}  // namespace gmc
