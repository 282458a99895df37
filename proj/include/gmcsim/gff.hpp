#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "gmcsim/domain.hpp"

namespace gmc {

struct Node {
  Vec2 center;
  double radius;
};

// A finite family of circle-average evaluation nodes on one domain. Validates
// that every center is interior, every clipped circle is nonempty and that no
// (center, radius) pair repeats. Clipped quadrature nodes are precomputed.
class NodeSet {
 public:
  NodeSet(const Domain& domain, std::vector<Node> nodes, int quad_order = 64);

  const Domain& domain() const { return domain_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  int quad_order() const { return quad_order_; }

  const std::vector<WeightedPoint>& clipped(std::size_t i) const { return clipped_[i]; }
  bool full_circle(std::size_t i) const { return full_[i]; }

 private:
  Domain domain_;
  std::vector<Node> nodes_;
  int quad_order_;
  std::vector<std::vector<WeightedPoint>> clipped_;
  std::vector<char> full_;
};

struct CovarianceMatrix {
  Eigen::MatrixXd matrix;  // symmetric, jitter already added to the diagonal
  double jitter{0.0};
  Eigen::MatrixXd chol;  // lower-triangular factor of `matrix`
};

struct FieldSample {
  std::vector<double> values;  // aligned with the NodeSet order
  std::uint64_t seed{0};
  int replicate_index{0};
};

// Covariance of two circle averages: the double integral of the Green
// function against the two clipped, normalized circle measures. Exact
// harmonic-average identities are used where the circles are full; only
// pairs of boundary-clipped circles fall back to raw M x M quadrature.
// The diagonal of a full circle is exactly -log eps + log R(x, D).
double cov_circle_avg(const Domain& d, Node a, Node b, int M = 64);

// Full covariance matrix over a node set; parallel over entries. If plain
// Cholesky fails, a diagonal jitter escalates geometrically from 1e-12 until
// the factorization succeeds, failing at 1e-6 times the largest diagonal.
CovarianceMatrix build_covariance(const NodeSet& ns, int M = 64);

// i.i.d. centered Gaussian vectors with the given covariance; replicate r is
// a pure function of (seed, base_replicate + r).
std::vector<FieldSample> sample_exact(const CovarianceMatrix& cov, int n_reps,
                                      std::uint64_t seed, int base_replicate = 0);

// ---------------------------------------------------------------------------
// Spectral grid backend (unit square only)
// ---------------------------------------------------------------------------

// Zero-boundary field on the N x N interior lattice of (0,1)^2, spacing
// h = 1/(N+1), synthesized in the discrete-Laplacian sine eigenbasis with
// weights 1/sqrt(lambda_jk) and scaled by `calibration`.
struct GridField {
  int size{0};
  std::vector<double> values;  // row-major, values[i*N + j] at ((i+1)h, (j+1)h)
  double calibration{1.0};
  std::uint64_t seed{0};
  int replicate_index{0};

  double at(int i, int j) const {
    if (i < 0 || j < 0 || i >= size || j >= size) return 0.0;
    return values[static_cast<std::size_t>(i) * size + j];
  }
};

GridField sample_grid(int N, std::uint64_t seed, int replicate = 0, double calibration = 1.0);

// DST-I synthesis from given spectral coefficients; exposed for the basis
// round-trip test.
std::vector<double> dst2_synthesize(int N, const std::vector<double>& coeffs);
std::vector<double> dst2_analyze(int N, const std::vector<double>& values);

// Multiplicative factor matching the empirical circle-average variance at the
// square's center to -log eps + log R(center). Requires eps in [4/N, 1/4].
double calibrate_grid(int N, double eps, int n_reps, std::uint64_t seed);

// Average of bilinearly interpolated field values over the clipped circle.
double circle_average_on_grid(const GridField& f, Vec2 x, double eps, int M = 64);

// ---------------------------------------------------------------------------
// Binary snapshots: magic "GMCFLD1\0", version, payload kind, sizes, seed and
// config digest in the header, little-endian doubles as payload.
// ---------------------------------------------------------------------------

void save_field(const std::string& path, const FieldSample& f, std::uint64_t config_digest);
FieldSample load_field(const std::string& path, std::uint64_t* config_digest = nullptr);
void save_grid(const std::string& path, const GridField& g, std::uint64_t config_digest);
GridField load_grid(const std::string& path, std::uint64_t* config_digest = nullptr);

}  // namespace gmc
