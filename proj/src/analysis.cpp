#include "gmcsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "gmcsim/error.hpp"
#include "gmcsim/parallel.hpp"
#include "gmcsim/rng.hpp"

namespace gmc {

namespace {

struct LineFit {
  double slope;
  double intercept;
  double rms_residual;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const double k = static_cast<double>(x.size());
  if (x.size() < 2 || x.size() != y.size()) fail(errc::fit_failed, "fit_line");
  const double sx = std::accumulate(x.begin(), x.end(), 0.0);
  const double sy = std::accumulate(y.begin(), y.end(), 0.0);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = k * sxx - sx * sx;
  if (std::abs(denom) < 1e-14) fail(errc::fit_failed, "degenerate abscissae");
  LineFit f;
  f.slope = (k * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / k;
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - f.slope * x[i] - f.intercept;
    rss += r * r;
  }
  f.rms_residual = std::sqrt(rss / k);
  return f;
}

}  // namespace

DimensionReport local_dimension(const GmcApproximant& approx, std::span<const double> radii,
                                int sample_points, std::uint64_t seed, double base_dimension,
                                const std::function<double(Vec2)>& interior_margin) {
  if (radii.size() < 2) fail(errc::fit_failed, "local_dimension: need >= 2 radii");
  if (sample_points < 1) fail(errc::invalid_argument, "local_dimension: sample_points");
  const auto& atoms = approx.atoms.atoms;
  if (atoms.empty()) fail(errc::invalid_argument, "local_dimension: empty approximant");
  const double r_max = *std::max_element(radii.begin(), radii.end());

  // Size-biased sampling: cumulative weights over admissible atoms.
  std::vector<double> cum;
  std::vector<std::size_t> admissible;
  cum.reserve(atoms.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (interior_margin && interior_margin(atoms[i].p) < r_max) continue;
    acc += atoms[i].w;
    cum.push_back(acc);
    admissible.push_back(i);
  }
  if (cum.empty() || !(acc > 0)) fail(errc::fit_failed, "local_dimension: no admissible atoms");

  Rng rng(seed, 0x64696d32ULL);
  std::vector<Vec2> points(static_cast<std::size_t>(sample_points));
  for (auto& p : points) {
    const double u = rng.next_unit() * acc;
    const auto it = std::lower_bound(cum.begin(), cum.end(), u);
    p = atoms[admissible[static_cast<std::size_t>(it - cum.begin())]].p;
  }

  std::vector<double> logr(radii.size());
  for (std::size_t k = 0; k < radii.size(); ++k) logr[k] = std::log(radii[k]);

  DimensionReport rep;
  rep.slopes.resize(points.size());
#pragma omp parallel for schedule(static) num_threads(effective_threads())
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    std::vector<double> logm(radii.size());
    for (std::size_t k = 0; k < radii.size(); ++k) {
      double mass = 0.0;
      for (const auto& a : atoms)
        if (dist(points[pi], a.p) <= radii[k]) mass += a.w;
      logm[k] = mass > 0 ? std::log(mass) : -1e300;
    }
    rep.slopes[pi] = fit_line(logr, logm).slope;
  }

  rep.target = base_dimension - 0.5 * approx.gamma * approx.gamma;
  std::vector<double> sorted = rep.slopes;
  std::sort(sorted.begin(), sorted.end());
  rep.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / sorted.size();
  rep.median = sorted[sorted.size() / 2];
  // Unit-mass histogram over the observed range.
  const int nbins = 40;
  rep.hist_lo = sorted.front();
  rep.hist_hi = sorted.back() + 1e-12;
  rep.histogram.assign(nbins, 0.0);
  for (double s : sorted) {
    const int b = std::min(nbins - 1, static_cast<int>((s - rep.hist_lo) /
                                                       (rep.hist_hi - rep.hist_lo) * nbins));
    rep.histogram[static_cast<std::size_t>(b)] += 1.0 / sorted.size();
  }
  return rep;
}

ProjectionField projection_field(const Domain& disk, double gamma, std::span<const double> thetas,
                                 std::span<const double> us, double h, std::uint64_t seed,
                                 int level, int quad_order, std::size_t max_nodes) {
  if (disk.kind != DomainKind::unit_disk)
    fail(errc::invalid_argument, "projection_field: disk domains only");
  if (thetas.empty() || us.empty()) fail(errc::invalid_argument, "projection_field: empty grid");
  if (!(gamma >= 0)) fail(errc::invalid_argument, "projection_field: gamma < 0");

  ProjectionField out;
  out.thetas.assign(thetas.begin(), thetas.end());
  out.us.assign(us.begin(), us.end());
  out.mass.assign(thetas.size(), std::vector<double>(us.size(), 0.0));
  out.integrated_slice.assign(thetas.size(), 0.0);

  // Chord atoms per (theta, u); empty chords contribute zero mass.
  std::vector<std::vector<AtomList>> chords(thetas.size());
  std::vector<Node> nodes;
  const double eps = std::exp2(-level);
  for (std::size_t ti = 0; ti < thetas.size(); ++ti) {
    out.support.push_back(support_interval(disk, thetas[ti]));
    chords[ti].resize(us.size());
    for (std::size_t ui = 0; ui < us.size(); ++ui) {
      try {
        chords[ti][ui] = chord_atoms(disk, Line(thetas[ti], us[ui]), h);
      } catch (const error& e) {
        if (e.code() != errc::no_intersection) throw;
        continue;  // line misses the disk: zero measure
      }
      auto& al = chords[ti][ui];
      if (gamma > 0.0) {
        // Atoms grazing the boundary cannot carry a circle-average node.
        std::erase_if(al.atoms, [&](const Atom& a) { return !disk.contains(a.p); });
        for (const auto& a : al.atoms) nodes.push_back({a.p, eps});
      }
    }
  }
  // Planar lattice for the direct mass, quarter-cell offset so no planar atom
  // coincides with a chord atom.
  AtomList planar;
  {
    const auto [lo, hi] = disk.bounding_box();
    std::vector<Atom> pa;
    const int nx = static_cast<int>(std::ceil((hi.x - lo.x) / h));
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < nx; ++j) {
        const Vec2 c{lo.x + (i + 0.75) * h, lo.y + (j + 0.75) * h};
        if (disk.contains(c)) pa.push_back({c, h * h});
      }
    planar = make_atom_list(std::move(pa), "projection planar lattice h=" + std::to_string(h));
  }
  out.planar_base_mass = planar.total_mass;
  if (gamma > 0.0)
    for (const auto& a : planar.atoms) nodes.push_back({a.p, eps});

  if (nodes.size() > max_nodes)
    fail(errc::ladder_too_large,
         std::to_string(nodes.size()) + " nodes > " + std::to_string(max_nodes));

  std::vector<double> field;
  if (gamma > 0.0) {
    const NodeSet ns(disk, nodes, quad_order);
    const CovarianceMatrix cov = build_covariance(ns, quad_order);
    field = sample_exact(cov, 1, seed)[0].values;
  } else {
    field.assign(nodes.size(), 0.0);
  }

  const double norm = std::exp2(-0.5 * level * gamma * gamma);
  std::size_t off = 0;
  for (std::size_t ti = 0; ti < thetas.size(); ++ti) {
    for (std::size_t ui = 0; ui < us.size(); ++ui) {
      double y = 0.0;
      for (const auto& a : chords[ti][ui].atoms)
        y += gamma > 0.0 ? a.w * norm * std::exp(gamma * field[off++]) : a.w;
      out.mass[ti][ui] = y;
    }
  }
  double planar_mass = 0.0;
  for (const auto& a : planar.atoms)
    planar_mass += gamma > 0.0 ? a.w * norm * std::exp(gamma * field[off++]) : a.w;
  out.planar_mass = planar_mass;

  // Midpoint-rule integral of the slice masses over u per direction.
  for (std::size_t ti = 0; ti < thetas.size(); ++ti) {
    double s = 0.0;
    for (std::size_t ui = 0; ui < us.size(); ++ui) {
      const double du = ui + 1 < us.size()
                            ? (ui == 0 ? us[1] - us[0] : 0.5 * (us[ui + 1] - us[ui - 1]))
                            : us[ui] - us[ui - 1];
      s += out.mass[ti][ui] * du;
    }
    out.integrated_slice[ti] = s;
  }
  return out;
}

FourierDecay fourier_decay(const GmcApproximant& approx, std::span<const Vec2> directions,
                           double f_min, double f_max, int n_freqs) {
  if (!(f_min >= 2.0 * kPi)) fail(errc::invalid_argument, "fourier_decay: f_min < 2 pi");
  if (!(f_max > f_min) || n_freqs < 2) fail(errc::invalid_argument, "fourier_decay: freq range");
  if (directions.empty()) fail(errc::invalid_argument, "fourier_decay: no directions");
  const auto& atoms = approx.atoms.atoms;
  if (atoms.empty()) fail(errc::invalid_argument, "fourier_decay: empty measure");

  FourierDecay out;
  out.freqs.resize(static_cast<std::size_t>(n_freqs));
  const double lr = std::log(f_max / f_min);
  for (int k = 0; k < n_freqs; ++k)
    out.freqs[static_cast<std::size_t>(k)] = f_min * std::exp(lr * k / (n_freqs - 1));
  out.transform_abs.assign(directions.size(), std::vector<double>(out.freqs.size(), 0.0));

  const auto n_jobs = static_cast<std::ptrdiff_t>(directions.size() * out.freqs.size());
#pragma omp parallel for schedule(static) num_threads(effective_threads())
  for (std::ptrdiff_t idx = 0; idx < n_jobs; ++idx) {
    const std::size_t di = static_cast<std::size_t>(idx) / out.freqs.size();
    const std::size_t ki = static_cast<std::size_t>(idx) % out.freqs.size();
    const Vec2 xi = out.freqs[ki] * directions[di];
    double re = 0.0, im = 0.0;
    for (const auto& a : atoms) {
      const double ph = xi.dot(a.p);
      re += a.w * std::cos(ph);
      im += a.w * std::sin(ph);
    }
    out.transform_abs[di][ki] = std::hypot(re, im);
  }

  std::vector<double> lx, ly, pooled_x, pooled_y;
  for (std::size_t di = 0; di < directions.size(); ++di) {
    lx.clear();
    ly.clear();
    for (std::size_t ki = 0; ki < out.freqs.size(); ++ki) {
      const double a = out.transform_abs[di][ki];
      if (a <= 0) continue;
      lx.push_back(std::log(out.freqs[ki]));
      ly.push_back(std::log(a));
    }
    if (lx.size() < 2) fail(errc::fit_failed, "fourier_decay: vanishing transform");
    out.beta_per_direction.push_back(-fit_line(lx, ly).slope);
    pooled_x.insert(pooled_x.end(), lx.begin(), lx.end());
    pooled_y.insert(pooled_y.end(), ly.begin(), ly.end());
  }
  out.beta_pooled = -fit_line(pooled_x, pooled_y).slope;
  return out;
}

HolderReport holder_exponent(std::span<const double> y,
                             const std::function<double(std::size_t, std::size_t)>& dist_fn,
                             int n_scales, int min_pairs) {
  if (n_scales < 3) fail(errc::invalid_argument, "holder_exponent: need >= 3 scales");
  if (y.size() < 2) fail(errc::invalid_argument, "holder_exponent: need >= 2 samples");

  double d_max = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = i + 1; j < y.size(); ++j) d_max = std::max(d_max, dist_fn(i, j));
  if (!(d_max > 0)) fail(errc::fit_failed, "holder_exponent: all parameters coincide");
  const double top = std::exp2(std::ceil(std::log2(d_max)));

  HolderReport rep;
  std::vector<double> sup(static_cast<std::size_t>(n_scales), 0.0);
  std::vector<long> count(static_cast<std::size_t>(n_scales), 0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    for (std::size_t j = i + 1; j < y.size(); ++j) {
      const double d = dist_fn(i, j);
      if (!(d > 0)) continue;
      const int b = static_cast<int>(std::floor(std::log2(top / d)));
      if (b < 0 || b >= n_scales) continue;
      const auto bi = static_cast<std::size_t>(b);
      sup[bi] = std::max(sup[bi], std::abs(y[i] - y[j]));
      ++count[bi];
    }
  }
  std::vector<double> lx, ly;
  bool any_positive = false;
  for (int b = 0; b < n_scales; ++b) {
    const auto bi = static_cast<std::size_t>(b);
    if (count[bi] < min_pairs) continue;
    rep.scales.push_back(top * std::exp2(-b));
    rep.sup_increments.push_back(sup[bi]);
    if (sup[bi] > 0) {
      any_positive = true;
      lx.push_back(std::log(rep.scales.back()));
      ly.push_back(std::log(sup[bi]));
    }
  }
  if (!any_positive) {
    rep.degenerate = true;  // constant family
    return rep;
  }
  if (lx.size() < 3) fail(errc::fit_failed, "holder_exponent: fewer than 3 usable scales");
  const LineFit f = fit_line(lx, ly);
  rep.beta_hat = f.slope;
  rep.residual = f.rms_residual;
  return rep;
}

std::vector<std::pair<double, double>> quantum_length(const Domain& d, const Curve& curve,
                                                      double gamma,
                                                      std::span<const double> t_grid, double h,
                                                      std::uint64_t seed, int level,
                                                      int quad_order, std::size_t max_nodes) {
  const double L = curve.length();
  const AtomList full = curve_atoms(curve, L, h);
  if (full.atoms.size() > max_nodes)
    fail(errc::ladder_too_large, "curve atoms exceed node budget");
  for (const auto& a : full.atoms)
    if (!d.contains(a.p)) fail(errc::point_outside_domain, "quantum_length: curve leaves domain");

  std::vector<double> weights(full.atoms.size());
  if (gamma > 0.0) {
    std::vector<Node> nodes;
    const double eps = std::exp2(-level);
    for (const auto& a : full.atoms) nodes.push_back({a.p, eps});
    const NodeSet ns(d, std::move(nodes), quad_order);
    const CovarianceMatrix cov = build_covariance(ns, quad_order);
    const auto field = sample_exact(cov, 1, seed)[0];
    const double norm = std::exp2(-0.5 * level * gamma * gamma);
    for (std::size_t i = 0; i < full.atoms.size(); ++i)
      weights[i] = full.atoms[i].w * norm * std::exp(gamma * field.values[i]);
  } else {
    for (std::size_t i = 0; i < full.atoms.size(); ++i) weights[i] = full.atoms[i].w;
  }

  // Prefix masses: atom k covers arc [k h, min((k+1) h, L)); partial overlap
  // of the last cell is prorated so L(t) is continuous and strictly
  // increasing in t across atoms.
  std::vector<std::pair<double, double>> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    if (t < -1e-12 || t > L + 1e-12) fail(errc::parameter_out_of_range, "quantum_length: t");
    const double tc = std::clamp(t, 0.0, L);
    double mass = 0.0;
    for (std::size_t k = 0; k < full.atoms.size(); ++k) {
      const double cell_lo = k * h;
      const double cell_hi = std::min((k + 1) * h, L);
      if (tc >= cell_hi)
        mass += weights[k];
      else if (tc > cell_lo) {
        mass += weights[k] * (tc - cell_lo) / (cell_hi - cell_lo);
        break;
      } else {
        break;
      }
    }
    out.emplace_back(t, mass);
  }
  return out;
}

std::pair<double, double> multifractal_interval(double gamma) {
  if (!(gamma >= 0)) fail(errc::invalid_argument, "multifractal_interval: gamma < 0");
  const double s = std::numbers::sqrt2;
  const double lo = (s - gamma / s) * (s - gamma / s);
  const double hi = (s + gamma / s) * (s + gamma / s);
  return {lo, hi};
}

}  // namespace gmc
