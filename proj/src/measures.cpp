#include "gmcsim/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "gmcsim/error.hpp"
#include "gmcsim/parallel.hpp"

namespace gmc {

AtomList make_atom_list(std::vector<Atom> atoms, std::string provenance) {
  AtomList al;
  al.atoms = std::move(atoms);
  al.provenance = std::move(provenance);
  al.total_mass = 0.0;
  for (const auto& a : al.atoms) {
    if (!(a.w > 0)) fail(errc::invalid_argument, "atom weight <= 0");
    al.total_mass += a.w;
  }
  return al;
}

AtomList lebesgue_atoms(const Domain& d, double h) {
  if (!(h > 0) || h > 0.25 * d.scale * (d.kind == DomainKind::unit_square ? 1.0 : 2.0))
    fail(errc::invalid_argument, "lebesgue_atoms: h outside (0, 1/4 of extent]");
  const auto [lo, hi] = d.bounding_box();
  std::vector<Atom> atoms;
  const double w = h * h;
  const int nx = static_cast<int>(std::ceil((hi.x - lo.x) / h));
  const int ny = static_cast<int>(std::ceil((hi.y - lo.y) / h));
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      const Vec2 c{lo.x + (i + 0.5) * h, lo.y + (j + 0.5) * h};
      if (d.contains(c)) atoms.push_back({c, w});
    }
  }
  return make_atom_list(std::move(atoms), "lebesgue h=" + std::to_string(h));
}

namespace {

// n-1 full cells of weight h plus one truncated end cell, total exactly L.
AtomList line_atoms(const std::function<Vec2(double)>& at, double L, double h,
                    const std::string& provenance) {
  std::vector<Atom> atoms;
  if (L > 0) {
    const int nfull = static_cast<int>(std::floor(L / h));
    for (int k = 0; k < nfull; ++k) atoms.push_back({at((k + 0.5) * h), h});
    const double rem = L - nfull * h;
    if (rem > 0) atoms.push_back({at(nfull * h + 0.5 * rem), rem});
  }
  return make_atom_list(std::move(atoms), provenance);
}

}  // namespace

AtomList chord_atoms(const Domain& d, const Line& line, double h) {
  if (!(h > 0)) fail(errc::invalid_argument, "chord_atoms: h <= 0");
  const Chord ch = chord_of(d, line);  // throws no-intersection
  const Vec2 dir = ch.length > 0 ? (ch.b - ch.a) / ch.length : Vec2{0, 0};
  return line_atoms([&](double s) { return ch.a + s * dir; }, ch.length, h,
                    "chord theta=" + std::to_string(line.theta) + " u=" + std::to_string(line.u) +
                        " h=" + std::to_string(h));
}

AtomList curve_atoms(const Curve& c, double t, double h) {
  if (!(h > 0)) fail(errc::invalid_argument, "curve_atoms: h <= 0");
  const double L = c.length();
  if (t < -1e-12 || t > L + 1e-12) fail(errc::parameter_out_of_range, "curve_atoms: t");
  return line_atoms([&](double s) { return c.point_at(s); }, std::clamp(t, 0.0, L), h,
                    "curve prefix t=" + std::to_string(t) + " h=" + std::to_string(h));
}

Vec2 IfsMap::apply(Vec2 x) const {
  const double c = std::cos(angle), s = std::sin(angle);
  return {ratio * (c * x.x - s * x.y) + shift.x, ratio * (s * x.x + c * x.y) + shift.y};
}

bool validate_ifs(const Domain& d, const IfsSpec& spec) {
  const auto m = spec.maps.size();
  if (m < 2) fail(errc::invalid_argument, "ifs: need at least 2 maps");
  if (spec.probs.size() != m) fail(errc::invalid_argument, "ifs: probs size mismatch");
  double sum = 0.0;
  for (double p : spec.probs) {
    if (!(p > 0)) fail(errc::invalid_argument, "ifs: prob <= 0");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) fail(errc::invalid_argument, "ifs: probs must sum to 1");
  const auto [lo, hi] = d.bounding_box();
  const Vec2 corners[4] = {lo, {hi.x, lo.y}, hi, {lo.x, hi.y}};
  for (const auto& g : spec.maps) {
    if (!(g.ratio > 0 && g.ratio < 1)) fail(errc::invalid_argument, "ifs: ratio outside (0,1)");
    for (const Vec2& c : corners)
      if (!d.contains_closed(g.apply(c)))
        fail(errc::invalid_argument, "ifs: map image leaves the domain");
  }
  // Open-set-condition heuristic: depth-1 bounding boxes pairwise disjoint
  // (interiors). Axis-aligned boxes of the rotated images are compared, which
  // is conservative; overlap only triggers a warning flag upstream.
  std::vector<std::pair<Vec2, Vec2>> boxes;
  for (const auto& g : spec.maps) {
    Vec2 bl{1e300, 1e300}, tr{-1e300, -1e300};
    for (const Vec2& c : corners) {
      const Vec2 q = g.apply(c);
      bl = {std::min(bl.x, q.x), std::min(bl.y, q.y)};
      tr = {std::max(tr.x, q.x), std::max(tr.y, q.y)};
    }
    boxes.emplace_back(bl, tr);
  }
  for (std::size_t i = 0; i < boxes.size(); ++i)
    for (std::size_t j = i + 1; j < boxes.size(); ++j) {
      const bool overlap = boxes[i].first.x < boxes[j].second.x &&
                           boxes[j].first.x < boxes[i].second.x &&
                           boxes[i].first.y < boxes[j].second.y &&
                           boxes[j].first.y < boxes[i].second.y;
      if (overlap) return false;
    }
  return true;
}

AtomList ifs_atoms(const Domain& d, const IfsSpec& spec) {
  validate_ifs(d, spec);
  const int m = static_cast<int>(spec.maps.size());
  if (spec.depth < 1) fail(errc::invalid_argument, "ifs: depth < 1");
  double count = std::pow(static_cast<double>(m), spec.depth);
  if (count > 1e7) fail(errc::ifs_too_deep, "word count exceeds 1e7");

  const Vec2 x0 = d.center();
  std::vector<Atom> atoms;
  atoms.reserve(static_cast<std::size_t>(count));
  // Depth-first over words, composing affine maps incrementally.
  struct Frame {
    Vec2 image;
    double weight;
  };
  std::vector<int> word(static_cast<std::size_t>(spec.depth), 0);
  // Iterative enumeration in lexicographic order keeps the output order
  // deterministic and matches the word <-> atom indexing.
  const auto emit = [&](const std::vector<int>& w) {
    Vec2 p = x0;
    double weight = 1.0;
    for (auto it = w.rbegin(); it != w.rend(); ++it) p = spec.maps[*it].apply(p);
    for (int i : w) weight *= spec.probs[i];
    atoms.push_back({p, weight});
  };
  for (;;) {
    emit(word);
    int pos = spec.depth - 1;
    while (pos >= 0 && word[pos] == m - 1) word[pos--] = 0;
    if (pos < 0) break;
    ++word[pos];
  }
  return make_atom_list(std::move(atoms),
                        "ifs m=" + std::to_string(m) + " depth=" + std::to_string(spec.depth));
}

double growth_exponent(const IfsSpec& spec) {
  if (spec.maps.size() != spec.probs.size() || spec.maps.empty())
    fail(errc::invalid_argument, "growth_exponent: bad spec");
  double a = 1e300;
  for (std::size_t i = 0; i < spec.maps.size(); ++i)
    a = std::min(a, std::log(spec.probs[i]) / std::log(spec.maps[i].ratio));
  return a;
}

A1Fit estimate_A1(const AtomList& al, std::span<const double> radii) {
  if (radii.size() < 2) fail(errc::invalid_argument, "estimate_A1: need >= 2 radii");
  if (al.atoms.size() < 10) fail(errc::invalid_argument, "estimate_A1: need >= 10 atoms");
  const auto n = al.atoms.size();
  std::vector<double> logr, logm;
  for (double r : radii) {
    double best = 0.0;
#pragma omp parallel for schedule(static) num_threads(effective_threads()) reduction(max : best)
    for (std::size_t i = 0; i < n; ++i) {
      double mass = 0.0;
      const Vec2 c = al.atoms[i].p;
      for (std::size_t j = 0; j < n; ++j)
        if (dist(c, al.atoms[j].p) <= r) mass += al.atoms[j].w;
      best = std::max(best, mass);
    }
    if (!(best > 0)) fail(errc::fit_failed, "estimate_A1: empty balls");
    logr.push_back(std::log(r));
    logm.push_back(std::log(best));
  }
  // Least squares slope/intercept.
  const double k = static_cast<double>(logr.size());
  const double sx = std::accumulate(logr.begin(), logr.end(), 0.0);
  const double sy = std::accumulate(logm.begin(), logm.end(), 0.0);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < logr.size(); ++i) {
    sxx += logr[i] * logr[i];
    sxy += logr[i] * logm[i];
  }
  const double denom = k * sxx - sx * sx;
  if (std::abs(denom) < 1e-12) fail(errc::fit_failed, "estimate_A1: degenerate radii");
  const double slope = (k * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / k;
  return {std::exp(intercept), slope};
}

FamilySpec builtin_family(FamilyKind kind, int ifs_m) {
  switch (kind) {
    case FamilyKind::chords:
      return {kind, 1.0, 0.5, 2, 1.0};
    case FamilyKind::curve_prefix:
      return {kind, 1.0, 1.0, 1, 1.0};
    case FamilyKind::ifs_path:
      // nu(I_s \Delta I_t) = 0, so alpha2' is unconstrained; lambda = alpha2.
      return {kind, 1.0, 1e9, 4 * ifs_m, 1.0};
  }
  return {};
}

}  // namespace gmc
