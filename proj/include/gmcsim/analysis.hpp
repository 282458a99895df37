#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "gmcsim/gmc.hpp"

namespace gmc {

// ---------------------------------------------------------------------------
// Local dimension
// ---------------------------------------------------------------------------

struct DimensionReport {
  std::vector<double> slopes;  // per sampled point
  std::vector<double> histogram;
  double hist_lo{0.0};
  double hist_hi{0.0};
  double mean{0.0};
  double median{0.0};
  double target{0.0};  // base dimension - gamma^2/2
};

// Size-biased local dimension estimate: sample points from the weighted
// atoms, regress log mass(B(x,r)) on log r per point. `base_dimension` is
// the exact dimension of the base measure (2 for area, growth exponent for
// self-similar measures). Points with boundary-clipped largest balls can be
// excluded via `collar` (distance to the support boundary).
DimensionReport local_dimension(const GmcApproximant& approx, std::span<const double> radii,
                                int sample_points, std::uint64_t seed, double base_dimension,
                                const std::function<double(Vec2)>& interior_margin = nullptr);

// ---------------------------------------------------------------------------
// Projections
// ---------------------------------------------------------------------------

struct ProjectionField {
  std::vector<double> thetas;
  std::vector<double> us;
  std::vector<std::vector<double>> mass;  // [theta][u] slice masses Y
  std::vector<std::pair<double, double>> support;  // per theta
  double planar_mass{0.0};                // direct planar chaos mass, same field
  double planar_base_mass{0.0};           // base (gamma = 0) planar mass
  std::vector<double> integrated_slice;   // per theta: sum_u Y * du
};

// One coupled field over every chord atom of the (theta, u) grid plus an
// axis-aligned planar lattice; slice masses and the direct planar mass come
// from the same field sample, so integrating slices over u against the
// planar mass is a discrete Fubini check.
ProjectionField projection_field(const Domain& disk, double gamma,
                                 std::span<const double> thetas, std::span<const double> us,
                                 double h, std::uint64_t seed, int level, int quad_order = 64,
                                 std::size_t max_nodes = 8192);

// ---------------------------------------------------------------------------
// Fourier decay
// ---------------------------------------------------------------------------

struct FourierDecay {
  std::vector<double> freqs;                        // log-spaced moduli
  std::vector<std::vector<double>> transform_abs;   // [direction][freq]
  std::vector<double> beta_per_direction;
  double beta_pooled{0.0};
};

// |mu_hat(xi)| = |sum w_i e^{i xi . x_i}| on log-spaced frequencies along
// each direction; beta_hat is minus the log-log regression slope.
FourierDecay fourier_decay(const GmcApproximant& approx, std::span<const Vec2> directions,
                           double f_min, double f_max, int n_freqs);

// ---------------------------------------------------------------------------
// Hoelder exponent of parameterized masses
// ---------------------------------------------------------------------------

struct HolderReport {
  std::vector<double> scales;          // dyadic bucket upper edges
  std::vector<double> sup_increments;  // per bucket
  double beta_hat{0.0};
  double residual{0.0};  // rms regression residual
  bool degenerate{false};
};

// Per dyadic scale bucket (scale/2, scale], the sup of |Y_i - Y_j| over pairs
// with d(i,j) in the bucket; beta_hat regresses log sup against log scale.
// Buckets with fewer than `min_pairs` pairs are dropped; fewer than 3
// surviving buckets is a fit failure.
HolderReport holder_exponent(std::span<const double> y,
                             const std::function<double(std::size_t, std::size_t)>& dist,
                             int n_scales, int min_pairs = 30);

// ---------------------------------------------------------------------------
// Quantum length
// ---------------------------------------------------------------------------

// Chaos mass of arc-length prefixes of a curve, one coupled field over the
// full curve's atoms; output is strictly increasing across atoms for every
// sample. Returns (t, L(t)) pairs on the given grid.
std::vector<std::pair<double, double>> quantum_length(const Domain& d, const Curve& curve,
                                                      double gamma,
                                                      std::span<const double> t_grid, double h,
                                                      std::uint64_t seed, int level,
                                                      int quad_order = 64,
                                                      std::size_t max_nodes = 8192);

// ---------------------------------------------------------------------------
// Multifractal support interval
// ---------------------------------------------------------------------------

// [(sqrt(2) - gamma/sqrt(2))^2, (sqrt(2) + gamma/sqrt(2))^2]
std::pair<double, double> multifractal_interval(double gamma);

}  // namespace gmc
