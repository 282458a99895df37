#include "gmcsim/gff.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "gmcsim/error.hpp"
#include "gmcsim/parallel.hpp"
#include "gmcsim/quadrature.hpp"
#include "gmcsim/rng.hpp"

namespace gmc {

NodeSet::NodeSet(const Domain& domain, std::vector<Node> nodes, int quad_order)
    : domain_(domain), nodes_(std::move(nodes)), quad_order_(quad_order) {
  if (nodes_.empty()) fail(errc::invalid_argument, "NodeSet: empty");
  std::map<std::pair<std::pair<double, double>, double>, int> seen;
  clipped_.resize(nodes_.size());
  full_.resize(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    if (!domain_.contains(n.center)) fail(errc::point_outside_domain, "NodeSet: center");
    if (!(n.radius > 0)) fail(errc::invalid_argument, "NodeSet: radius <= 0");
    if (++seen[{{n.center.x, n.center.y}, n.radius}] > 1)
      fail(errc::invalid_argument, "NodeSet: duplicate (center, radius)");
    clipped_[i] = circle_nodes(domain_, n.center, n.radius, quad_order_);
    full_[i] = circle_inside(domain_, n.center, n.radius) ? 1 : 0;
  }
}

// ---------------------------------------------------------------------------
// Covariance of circle averages.
//
// Mean-value identities for a FULL circle C(x,a) inside D:
//   avg_{p in C(x,a)} -log|p-q| = -log max(a, |x-q|)   (any q)
//   avg_{p in C(x,a)}  H(p,q)   =  H(x,q)              (H harmonic in p)
// so avg_p G(p,q) = -log max(a, |x-q|) + H(x,q) with no singularity left.
// Only pairs where BOTH circles are boundary-clipped need a raw double
// quadrature; everything else reduces to closed forms or one 1-d quadrature.
// ---------------------------------------------------------------------------

namespace {

constexpr int kReduce1d = 8;   // oversampling of the one-sided reduction
constexpr int kClipped2d = 4;  // oversampling of the clipped-clipped fallback

double reduce_over_nodes(const Domain& d, Vec2 x, double a,
                         const std::vector<WeightedPoint>& q_nodes) {
  double s = 0.0;
  for (const auto& q : q_nodes) {
    const double r = dist(x, q.p);
    s += q.w * (-std::log(std::max(a, r)) + green_regular_part(d, x, q.p));
  }
  return s;
}

double raw_double_quadrature(const Domain& d, const std::vector<WeightedPoint>& pa,
                             const std::vector<WeightedPoint>& pb) {
  const double floor_r = 1e-12 * d.scale;
  double s = 0.0;
  for (const auto& p : pa) {
    double row = 0.0;
    for (const auto& q : pb) {
      const double r = std::max(dist(p.p, q.p), floor_r);
      row += q.w * (-std::log(r) + green_regular_part(d, p.p, q.p));
    }
    s += p.w * row;
  }
  return s;
}

// Phi''(t) = -log|t|; used for the closed-form part of the arc self-integral.
double log_phi(double t) {
  if (t == 0.0) return 0.0;
  return t * t * (3.0 - 2.0 * std::log(std::abs(t))) * 0.25;
}

// int_{a}^{b} int_{c}^{d} -log|u - v| du dv
double log_rect_integral(double a, double b, double c, double d) {
  return log_phi(b - c) - log_phi(b - d) - log_phi(a - c) + log_phi(a - d);
}

// Variance of a clipped circle average over the exact retained arcs:
//   Var = avg(-log|p-q|) + avg H(p,q),
// where on the circle |p-q| = 2 eps |sin((phi-psi)/2)|. Split
//   -log(2 eps |sin((phi-psi)/2)|) = -log|phi-psi| - log(eps) + smooth(phi-psi)
// with smooth(t) = -log|2 sin(t/2) / t| analytic; the flat-log part has the
// elementary antiderivative above, the rest uses tensor Gauss-Legendre.
double clipped_diagonal_variance(const Domain& d, Vec2 x, double eps) {
  auto arcs = interior_arcs(d, x, eps);
  if (arcs.empty()) fail(errc::empty_circle, "clipped variance");

  // Rebase angles at the end of the widest excluded gap so all retained
  // angles fit in [0, 2pi - gap); then |phi - psi| stays clear of the 2pi
  // wrap where the kernel becomes singular again.
  double gap_end = 0.0, gap_widest = -1.0;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const double end = arcs[i].second;
    const double next = i + 1 < arcs.size() ? arcs[i + 1].first : arcs[0].first + 2.0 * kPi;
    if (next - end > gap_widest) {
      gap_widest = next - end;
      gap_end = next;
    }
  }
  // Subdivide into pieces of length <= pi/2 for the tensor quadrature.
  std::vector<std::pair<double, double>> pieces;
  double total = 0.0;
  for (auto [a, b] : arcs) {
    total += b - a;
    double a0 = a - gap_end;
    double b0 = b - gap_end;
    while (a0 < 0) {
      a0 += 2.0 * kPi;
      b0 += 2.0 * kPi;
    }
    const int nsub = std::max(1, static_cast<int>(std::ceil((b0 - a0) / (0.5 * kPi))));
    for (int s = 0; s < nsub; ++s)
      pieces.emplace_back(a0 + (b0 - a0) * s / nsub, a0 + (b0 - a0) * (s + 1) / nsub);
  }

  const auto smooth_log = [](double t) {
    // -log(2 sin(|t|/2) / |t|), analytic on (-2pi, 2pi), ~ t^2/24 near 0
    t = std::abs(t);
    if (t < 1e-8) return t * t / 24.0;
    return -std::log(2.0 * std::sin(0.5 * t) / t);
  };
  const GaussRule& g = gauss_rule(24);
  const std::size_t ng = g.x.size();
  double acc = 0.0;
  for (const auto& [a0, a1] : pieces) {
    for (const auto& [b0, b1] : pieces) {
      acc += log_rect_integral(a0, a1, b0, b1);
      const double la = a1 - a0, lb = b1 - b0;
      double sm = 0.0;
      for (std::size_t i = 0; i < ng; ++i) {
        const double phi = a0 + la * g.x[i] + gap_end;
        const Vec2 p = x + eps * dir_vec(phi);
        double row = 0.0;
        for (std::size_t j = 0; j < ng; ++j) {
          const double psi = b0 + lb * g.x[j] + gap_end;
          row += g.w[j] * (smooth_log((a0 + la * g.x[i]) - (b0 + lb * g.x[j])) +
                           green_regular_part(d, p, x + eps * dir_vec(psi)));
        }
        sm += g.w[i] * row;
      }
      acc += sm * la * lb;
    }
  }
  return acc / (total * total) - std::log(eps);
}

}  // namespace

static double cov_entry(const Domain& d, Node a, bool a_full, Node b, bool b_full, int M) {
  const bool same = a.center == b.center && a.radius == b.radius;
  if (same) {
    if (a_full)
      return -std::log(a.radius) + std::log(conformal_radius(d, a.center));
    return clipped_diagonal_variance(d, a.center, a.radius);
  }
  const double sep = dist(a.center, b.center);
  if (a_full && b_full) {
    if (sep >= a.radius + b.radius)  // disjoint: both averages collapse to centers
      return green_function(d, a.center, b.center);
    if (sep <= std::abs(a.radius - b.radius)) {  // nested (concentric included)
      const double outer = std::max(a.radius, b.radius);
      return -std::log(outer) + green_regular_part(d, a.center, b.center);
    }
  }
  if (a_full || b_full) {
    // Reduce exactly over a full circle, quadrature only over the other one.
    Node p, q;
    if (a_full && (!b_full || a.radius >= b.radius)) {
      p = a;
      q = b;
    } else {
      p = b;
      q = a;
    }
    const auto q_nodes = circle_nodes(d, q.center, q.radius, kReduce1d * M);
    return reduce_over_nodes(d, p.center, p.radius, q_nodes);
  }
  const auto pa = circle_nodes(d, a.center, a.radius, kClipped2d * M);
  const auto pb = circle_nodes(d, b.center, b.radius, kClipped2d * M);
  return raw_double_quadrature(d, pa, pb);
}

double cov_circle_avg(const Domain& d, Node a, Node b, int M) {
  if (!d.contains(a.center) || !d.contains(b.center))
    fail(errc::point_outside_domain, "cov_circle_avg");
  // Validate both circles meet the domain (throws empty-circle otherwise).
  circle_nodes(d, a.center, a.radius, M);
  circle_nodes(d, b.center, b.radius, M);
  return cov_entry(d, a, circle_inside(d, a.center, a.radius), b,
                   circle_inside(d, b.center, b.radius), M);
}

CovarianceMatrix build_covariance(const NodeSet& ns, int M) {
  const auto n = static_cast<Eigen::Index>(ns.size());
  CovarianceMatrix cov;
  cov.matrix.resize(n, n);
  const Domain& d = ns.domain();
  const auto& nodes = ns.nodes();

#pragma omp parallel for schedule(dynamic, 1) num_threads(effective_threads())
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = cov_entry(d, nodes[i], ns.full_circle(i), nodes[j], ns.full_circle(j), M);
      cov.matrix(i, j) = v;
      cov.matrix(j, i) = v;
    }
  }

  const double max_diag = cov.matrix.diagonal().maxCoeff();
  const double cap = 1e-6 * max_diag;
  double jitter = 0.0;
  for (;;) {
    Eigen::MatrixXd m = cov.matrix;
    if (jitter > 0) m.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() == Eigen::Success) {
      cov.matrix = m;
      cov.jitter = jitter;
      cov.chol = llt.matrixL();
      return cov;
    }
    jitter = jitter == 0.0 ? 1e-12 : 10.0 * jitter;
    if (jitter > cap) fail(errc::covariance_not_psd, "jitter cap exceeded");
  }
}

std::vector<FieldSample> sample_exact(const CovarianceMatrix& cov, int n_reps, std::uint64_t seed,
                                      int base_replicate) {
  if (n_reps < 1) fail(errc::invalid_argument, "sample_exact: n_reps < 1");
  const auto n = cov.chol.rows();
  std::vector<FieldSample> out(static_cast<std::size_t>(n_reps));

#pragma omp parallel for schedule(static) num_threads(effective_threads())
  for (int r = 0; r < n_reps; ++r) {
    const int rep = base_replicate + r;
    GaussianStream gs(seed, static_cast<std::uint64_t>(rep));
    Eigen::VectorXd z(n);
    for (Eigen::Index i = 0; i < n; ++i) z[i] = gs.next();
    Eigen::VectorXd v = cov.chol.triangularView<Eigen::Lower>() * z;
    out[r].values.assign(v.data(), v.data() + n);
    out[r].seed = seed;
    out[r].replicate_index = rep;
  }
  return out;
}

}  // namespace gmc
