#include "gmcsim/gmc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gmcsim/criteria.hpp"
#include "gmcsim/error.hpp"
#include "gmcsim/parallel.hpp"

namespace gmc {

GmcApproximant gmc_weight(const AtomList& base, std::span<const double> gamma_values, int level,
                          double gamma, const std::string& source) {
  if (gamma_values.size() != base.atoms.size())
    fail(errc::node_mismatch, "field length != atom count");
  GmcApproximant out;
  out.level = level;
  out.gamma = gamma;
  out.source = source;
  out.atoms.provenance = base.provenance + " | gmc n=" + std::to_string(level) +
                         " gamma=" + std::to_string(gamma);
  out.atoms.atoms.resize(base.atoms.size());
  if (gamma == 0.0) {
    // Identity on measures, bit for bit.
    out.atoms.atoms = base.atoms;
    out.atoms.total_mass = base.total_mass;
    return out;
  }
  const double norm = std::exp2(-0.5 * level * gamma * gamma);
  double total = 0.0;
  for (std::size_t i = 0; i < base.atoms.size(); ++i) {
    const double w = base.atoms[i].w * norm * std::exp(gamma * gamma_values[i]);
    if (!std::isfinite(w) || !(w > 0)) fail(errc::invalid_argument, "nonfinite chaos weight");
    out.atoms.atoms[i] = {base.atoms[i].p, w};
    total += w;
  }
  out.atoms.total_mass = total;
  return out;
}

GmcApproximant gmc_weight(const AtomList& base, const FieldSample& field, int level,
                          double gamma) {
  return gmc_weight(base, field.values, level, gamma,
                    "seed=" + std::to_string(field.seed) +
                        " rep=" + std::to_string(field.replicate_index));
}

double total_mass(const GmcApproximant& a) {
  double s = 0.0;
  for (const auto& at : a.atoms.atoms) s += at.w;
  return s;
}

NodeSet ladder_nodes(const AtomList& base, const Domain& d, int n0, int n1, int quad_order,
                     std::size_t max_nodes) {
  if (n1 < n0 || n0 < 1) fail(errc::invalid_argument, "ladder levels");
  const std::size_t count = base.atoms.size() * static_cast<std::size_t>(n1 - n0 + 1);
  if (count > max_nodes)
    fail(errc::ladder_too_large, std::to_string(count) + " nodes > " + std::to_string(max_nodes));
  std::vector<Node> nodes;
  nodes.reserve(count);
  for (int n = n0; n <= n1; ++n) {
    const double eps = std::exp2(-n);
    for (const auto& a : base.atoms) nodes.push_back({a.p, eps});
  }
  return NodeSet(d, std::move(nodes), quad_order);
}

MassLadder mass_ladder(const AtomList& base, const Domain& d, double gamma, int n0, int n1,
                       int reps, std::uint64_t seed, int quad_order, std::size_t max_nodes) {
  if (reps < 1) fail(errc::invalid_argument, "mass_ladder: reps < 1");
  if (base.atoms.empty()) fail(errc::invalid_argument, "mass_ladder: empty measure");
  MassLadder ladder;
  ladder.n0 = n0;
  ladder.n1 = n1;
  ladder.replicates = reps;
  ladder.seed = seed;
  ladder.gamma = gamma;
  ladder.tag = base.provenance;
  ladder.mass.assign(static_cast<std::size_t>(reps),
                     std::vector<double>(static_cast<std::size_t>(n1 - n0 + 1), 0.0));
  const std::size_t natoms = base.atoms.size();

  if (gamma == 0.0) {
    for (auto& row : ladder.mass)
      for (auto& v : row) v = base.total_mass;
    return ladder;
  }

  const NodeSet ns = ladder_nodes(base, d, n0, n1, quad_order, max_nodes);
  const CovarianceMatrix cov = build_covariance(ns, quad_order);
  const auto fields = sample_exact(cov, reps, seed);

#pragma omp parallel for schedule(static) num_threads(effective_threads())
  for (int r = 0; r < reps; ++r) {
    for (int n = n0; n <= n1; ++n) {
      const double norm = std::exp2(-0.5 * n * gamma * gamma);
      const std::size_t off = static_cast<std::size_t>(n - n0) * natoms;
      double y = 0.0;
      for (std::size_t i = 0; i < natoms; ++i)
        y += base.atoms[i].w * norm * std::exp(gamma * fields[r].values[off + i]);
      ladder.mass[r][static_cast<std::size_t>(n - n0)] = y;
    }
  }
  return ladder;
}

ConvergenceReport convergence_report(const MassLadder& ladder, double p, double alpha1,
                                     double slack) {
  if (p < 1.0) fail(errc::invalid_p, "convergence_report");
  const int levels = ladder.n1 - ladder.n0 + 1;
  if (levels < 4) fail(errc::invalid_argument, "convergence_report: need >= 4 levels");
  if (ladder.replicates < 100)
    fail(errc::invalid_argument, "convergence_report: need >= 100 replicates");

  ConvergenceReport rep;
  rep.p = p;
  rep.alpha1 = alpha1;
  rep.slack = slack;
  rep.bound = s_exponent(alpha1, ladder.gamma, p);

  bool all_zero = true;
  std::vector<double> xs, ys;
  for (int n = ladder.n0; n < ladder.n1; ++n) {
    double mom = 0.0;
    for (int r = 0; r < ladder.replicates; ++r) {
      const auto& row = ladder.mass[static_cast<std::size_t>(r)];
      mom += std::pow(std::abs(row[static_cast<std::size_t>(n - ladder.n0 + 1)] -
                               row[static_cast<std::size_t>(n - ladder.n0)]),
                      p);
    }
    mom /= ladder.replicates;
    if (mom > 0) all_zero = false;
    rep.log2_moments.push_back(mom > 0 ? std::log2(mom) : -1e300);
    xs.push_back(n);
    ys.push_back(rep.log2_moments.back());
  }
  if (all_zero) {
    rep.degenerate = true;
    rep.pass = true;  // increments identically zero decay trivially
    rep.slope_hat = 0.0;
    return rep;
  }
  const double k = static_cast<double>(xs.size());
  const double sx = std::accumulate(xs.begin(), xs.end(), 0.0);
  const double sy = std::accumulate(ys.begin(), ys.end(), 0.0);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = k * sxx - sx * sx;
  if (std::abs(denom) < 1e-12) fail(errc::fit_failed, "convergence_report");
  rep.slope_hat = (k * sxy - sx * sy) / denom;
  rep.pass = rep.slope_hat <= -rep.bound + slack;
  return rep;
}

}  // namespace gmc
