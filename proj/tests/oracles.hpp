#pragma once

// Independent test oracles. Each one reaches its value by a different route
// than the library implementation it checks.

#include <complex>
#include <utility>
#include <vector>

#include "gmcsim/domain.hpp"
#include "gmcsim/gff.hpp"

namespace oracle {

// Dirichlet Green function of the unit square via the five-point Laplacian on
// an (n+2)^2 grid (n interior nodes per axis), solved exactly in the discrete
// sine basis. x and y snap to the nearest grid nodes. Returned in the
// -log|x-y| normalization.
double discrete_green_square(gmc::Vec2 x, gmc::Vec2 y, int interior_n = 1023);

// Conformal radius of the unit square via the rectangle -> half-plane
// elliptic map evaluated with Jacobi theta series (modulus 17 - 12 sqrt(2),
// nome e^{-2 pi}).
double elliptic_conformal_radius_square(gmc::Vec2 x);

// Green function of the unit square from the same elliptic map.
double elliptic_green_square(gmc::Vec2 x, gmc::Vec2 y);

// Raw double quadrature of the Green function over two clipped circles at
// order M, the covariance definition taken literally.
double raw_cov_quadrature(const gmc::Domain& d, gmc::Node a, gmc::Node b, int M);

// Fraction of the circle around x of radius eps lying inside the unit disk,
// from the closed-form circle-circle intersection angle.
double disk_arc_fraction(gmc::Vec2 x, double eps);

// Maximum of a scalar function over a uniform grid on [lo, hi].
std::pair<double, double> grid_max(double lo, double hi, int n,
                                   const std::function<double(double)>& f);
std::pair<double, double> grid_min(double lo, double hi, int n,
                                   const std::function<double(double)>& f);

}  // namespace oracle
