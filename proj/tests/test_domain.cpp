#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gmcsim/domain.hpp"
#include "gmcsim/error.hpp"
#include "gmcsim/rng.hpp"
#include "oracles.hpp"

using namespace gmc;

TEST_CASE("green function: disk closed forms") {
  const Domain d = unit_disk();
  // At the center the harmonic correction vanishes: G = -log|y|.
  CHECK(green_function(d, {0, 0}, {0.5, 0}) == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  // Symmetry at random interior pairs.
  Rng rng(11, 0);
  for (int i = 0; i < 50; ++i) {
    const Vec2 x{1.6 * rng.next_unit() - 0.8, 1.6 * rng.next_unit() - 0.8};
    const Vec2 y{1.6 * rng.next_unit() - 0.8, 1.6 * rng.next_unit() - 0.8};
    if (!d.contains(x) || !d.contains(y) || dist(x, y) < 1e-6) continue;
    CHECK(green_function(d, x, y) == doctest::Approx(green_function(d, y, x)).epsilon(1e-13));
  }
}

TEST_CASE("green function: errors") {
  const Domain d = unit_disk();
  CHECK_THROWS_AS(green_function(d, {0.2, 0.2}, {0.2, 0.2}), error);
  CHECK_THROWS_AS(green_function(d, {1.5, 0.0}, {0.2, 0.2}), error);
  try {
    green_function(d, {0.2, 0.2}, {0.2, 0.2});
  } catch (const error& e) {
    CHECK(e.code() == errc::green_singularity);
  }
}

TEST_CASE("green function: square matches discrete-Laplacian oracle") {
  const Domain s = unit_square();
  const double g = green_function(s, {0.5, 0.5}, {0.25, 0.5});
  const double og = oracle::discrete_green_square({0.5, 0.5}, {0.25, 0.5});
  CHECK(g == doctest::Approx(og).epsilon(1e-4));
  // An elliptic-map cross-check at a generic pair.
  CHECK(green_function(s, {0.3, 0.7}, {0.6, 0.4}) ==
        doctest::Approx(oracle::elliptic_green_square({0.3, 0.7}, {0.6, 0.4})).epsilon(1e-10));
  // Scale/offset invariance of G under the similarity map.
  const Domain s2 = unit_square({3.0, -1.0}, 2.5);
  CHECK(green_function(s2, s2.to_world({0.3, 0.7}), s2.to_world({0.6, 0.4})) ==
        doctest::Approx(green_function(s, {0.3, 0.7}, {0.6, 0.4})).epsilon(1e-12));
}

TEST_CASE("green function: log singularity rate") {
  // Ratio to -log|x-y| within 1% at separation 1e-4 near the center, where
  // the harmonic correction is small.
  const Domain d = unit_disk();
  const Domain s = unit_square();
  for (const Vec2 x : {Vec2{0.0, 0.0}, Vec2{0.2, 0.1}, Vec2{-0.15, 0.2}}) {
    const Vec2 y{x.x + 1e-4, x.y};
    CHECK(std::abs(green_function(d, x, y) / (-std::log(1e-4)) - 1.0) < 0.01);
  }
  // For the square, test on the rescaled copy whose center has conformal
  // radius 1, so the harmonic correction vanishes there and the pure
  // singularity rate is visible.
  const Domain s1 = unit_square({0, 0}, 1.0 / conformal_radius(s, {0.5, 0.5}));
  for (const Vec2 xl : {Vec2{0.5, 0.5}, Vec2{0.49, 0.51}}) {
    const Vec2 x = s1.to_world(xl);
    const Vec2 y{x.x + 1e-4, x.y};
    CHECK(std::abs(green_function(s1, x, y) / (-std::log(1e-4)) - 1.0) < 0.01);
  }
}

TEST_CASE("conformal radius: disk") {
  const Domain d = unit_disk();
  CHECK(conformal_radius(d, {0, 0}) == doctest::Approx(1.0));
  CHECK(conformal_radius(d, {0.5, 0}) == doctest::Approx(0.75));
  CHECK_THROWS_AS(conformal_radius(d, {1.0, 0.0}), error);
  // Scaled disk.
  const Domain d2 = unit_disk({1.0, 1.0}, 3.0);
  CHECK(conformal_radius(d2, {1.0, 1.0}) == doctest::Approx(3.0));
}

TEST_CASE("conformal radius: square against elliptic oracle") {
  const Domain s = unit_square();
  // Frozen center value 1/(sqrt(2) K4), K4 = Gamma(1/4) Gamma(1/2) / (4 Gamma(3/4)).
  CHECK(conformal_radius(s, {0.5, 0.5}) == doctest::Approx(0.53935260118837936).epsilon(1e-9));
  for (const Vec2 x : {Vec2{0.5, 0.5}, Vec2{0.25, 0.5}, Vec2{0.3, 0.7}, Vec2{0.1, 0.1},
                       Vec2{0.85, 0.4}, Vec2{0.05, 0.6}}) {
    const double r = conformal_radius(s, x);
    CHECK(r == doctest::Approx(oracle::elliptic_conformal_radius_square(x)).epsilon(1e-6));
    const double bd = s.boundary_distance(x);
    CHECK(r >= bd - 1e-12);
    CHECK(r <= 4.0 * bd + 1e-12);
  }
}

TEST_CASE("conformal radius: Koebe bounds at random points") {
  Rng rng(5, 0);
  const Domain d = unit_disk();
  const Domain s = unit_square();
  for (int i = 0; i < 200; ++i) {
    const Vec2 p{2 * rng.next_unit() - 1, 2 * rng.next_unit() - 1};
    if (d.contains(p)) {
      const double r = conformal_radius(d, p);
      CHECK(r >= d.boundary_distance(p) - 1e-12);
      CHECK(r <= 4 * d.boundary_distance(p) + 1e-12);
    }
    const Vec2 q{rng.next_unit(), rng.next_unit()};
    if (s.contains(q) && s.boundary_distance(q) > 1e-3) {
      const double r = conformal_radius(s, q);
      CHECK(r >= s.boundary_distance(q) - 1e-10);
      CHECK(r <= 4 * s.boundary_distance(q) + 1e-10);
    }
  }
}

TEST_CASE("conformal radius consistency with the Green regular part") {
  // H(x, x) = log R(x, D) ties the two implementations together.
  const Domain s = unit_square();
  for (const Vec2 x : {Vec2{0.5, 0.5}, Vec2{0.3, 0.6}, Vec2{0.2, 0.2}}) {
    CHECK(green_regular_part(s, x, x) ==
          doctest::Approx(std::log(conformal_radius(s, x))).epsilon(1e-8));
  }
}

TEST_CASE("circle nodes: full circle") {
  const Domain d = unit_disk();
  const auto nodes = circle_nodes(d, {0, 0}, 0.5, 4);
  REQUIRE(nodes.size() == 4);
  CHECK(nodes[0].p.x == doctest::Approx(0.5));
  CHECK(nodes[1].p.y == doctest::Approx(0.5));
  CHECK(nodes[2].p.x == doctest::Approx(-0.5));
  CHECK(nodes[3].p.y == doctest::Approx(-0.5));
  for (const auto& n : nodes) CHECK(n.w == doctest::Approx(0.25));
}

TEST_CASE("circle nodes: weights sum to one") {
  const Domain d = unit_disk();
  Rng rng(7, 0);
  for (int i = 0; i < 40; ++i) {
    const double r = 0.95 * std::sqrt(rng.next_unit());
    const double a = 2 * kPi * rng.next_unit();
    const Vec2 x = r * dir_vec(a);
    const double eps = std::exp2(-1.0 - 5.0 * rng.next_unit());
    const auto nodes = circle_nodes(d, x, eps, 64);
    double s = 0.0;
    for (const auto& n : nodes) s += n.w;
    CHECK(std::abs(s - 1.0) < 1e-14);
  }
}

TEST_CASE("circle nodes: clipped fraction matches intersection oracle") {
  const Domain d = unit_disk();
  const int M = 256;
  for (const auto& [x, eps] : std::vector<std::pair<Vec2, double>>{
           {{0.9, 0.0}, 0.2}, {{0.7, 0.3}, 0.3}, {{0.0, 0.85}, 0.4}, {{-0.6, -0.5}, 0.25}}) {
    const auto nodes = circle_nodes(d, x, eps, M);
    const double frac = static_cast<double>(nodes.size()) / M;
    CHECK(std::abs(frac - oracle::disk_arc_fraction(x, eps)) <= 2.0 / M);
  }
}

TEST_CASE("circle nodes: empty circle error") {
  const Domain d = unit_disk();
  CHECK_THROWS_AS(circle_nodes(d, {0.0, 0.0}, 3.0, 16), error);
}

TEST_CASE("interior arcs agree with node fractions") {
  const Domain d = unit_disk();
  const auto arcs = interior_arcs(d, {0.9, 0.0}, 0.2);
  double total = 0.0;
  for (auto [a, b] : arcs) total += b - a;
  CHECK(total / (2 * kPi) ==
        doctest::Approx(oracle::disk_arc_fraction({0.9, 0.0}, 0.2)).epsilon(1e-6));
  // Full circle: one arc of full measure.
  const auto full = interior_arcs(d, {0.1, 0.0}, 0.2);
  REQUIRE(full.size() == 1);
  CHECK(full[0].second - full[0].first == doctest::Approx(2 * kPi));
}

TEST_CASE("chords of the disk") {
  const Domain d = unit_disk();
  CHECK(chord_of(d, Line(0.0, 0.0)).length == doctest::Approx(2.0));
  CHECK(chord_of(d, Line(0.0, 1.0)).length == doctest::Approx(0.0));
  CHECK_THROWS_AS(chord_of(d, Line(0.3, 1.5)), error);
  // Endpoints on the boundary.
  const Chord c = chord_of(d, Line(0.7, 0.3));
  CHECK(std::abs(c.a.norm() - 1.0) < 1e-10);
  CHECK(std::abs(c.b.norm() - 1.0) < 1e-10);
  CHECK(c.length == doctest::Approx(dist(c.a, c.b)));
}

TEST_CASE("chords of the square") {
  const Domain s = unit_square();
  CHECK(chord_of(s, Line(0.0, 0.5)).length == doctest::Approx(1.0));
  // Diagonal line through both corners.
  const Chord diag = chord_of(s, Line(kPi / 4, 0.0));
  CHECK(diag.length == doctest::Approx(std::numbers::sqrt2));
  CHECK_THROWS_AS(chord_of(s, Line(0.0, 1.5)), error);
}

TEST_CASE("chord length is 1/2-Hoelder with the closed-form constant") {
  // |L(l) - L(l')| <= 4 sqrt(2) d(l,l')^{1/2} over random line pairs; for the
  // origin-centered disk the sharp constant is 2 sqrt(2), so this has margin.
  const Domain d = unit_disk();
  Rng rng(13, 1);
  int checked = 0;
  for (int i = 0; i < 10000; ++i) {
    const Line l1(kPi * rng.next_unit(), 2.0 * rng.next_unit() - 1.0);
    const Line l2(kPi * rng.next_unit(), 2.0 * rng.next_unit() - 1.0);
    const double dl = std::abs(chord_of(d, l1).length - chord_of(d, l2).length);
    CHECK(dl <= 4.0 * std::numbers::sqrt2 * std::sqrt(line_metric(l1, l2)) + 1e-12);
    ++checked;
  }
  CHECK(checked == 10000);
}

TEST_CASE("chord length Lipschitz on the inner region") {
  // On |u| <= 0.9 the chord length of the unit disk is Lipschitz in u with
  // constant max |dL/du| = 2 * 0.9 / sqrt(1 - 0.81) ~= 4.129.
  const Domain d = unit_disk();
  const double lip = 2.0 * 0.9 / std::sqrt(1.0 - 0.81) + 1e-9;
  Rng rng(17, 0);
  for (int i = 0; i < 2000; ++i) {
    const double theta = kPi * rng.next_unit();
    const double u1 = 1.8 * rng.next_unit() - 0.9;
    const double u2 = 1.8 * rng.next_unit() - 0.9;
    const double dl = std::abs(chord_of(d, Line(theta, u1)).length -
                               chord_of(d, Line(theta, u2)).length);
    CHECK(dl <= lip * std::abs(u1 - u2) + 1e-12);
  }
}

TEST_CASE("line metric") {
  CHECK(line_metric(Line(0.3, 0.4), Line(0.3, 0.4)) == 0.0);
  CHECK(line_metric(Line(0.05, 0.0), Line(kPi - 0.05, 0.0)) == doctest::Approx(0.1));
  // Triangle inequality on random triples.
  Rng rng(23, 0);
  for (int i = 0; i < 10000; ++i) {
    const Line a(kPi * rng.next_unit(), 2 * rng.next_unit() - 1);
    const Line b(kPi * rng.next_unit(), 2 * rng.next_unit() - 1);
    const Line c(kPi * rng.next_unit(), 2 * rng.next_unit() - 1);
    CHECK(line_metric(a, c) <= line_metric(a, b) + line_metric(b, c) + 1e-12);
    CHECK(line_metric(a, b) == doctest::Approx(line_metric(b, a)));
  }
}

TEST_CASE("support intervals") {
  const Domain d = unit_disk();
  for (double theta : {0.0, 0.7, 1.9, 3.0}) {
    const auto [lo, hi] = support_interval(d, theta);
    CHECK(lo == doctest::Approx(-1.0));
    CHECK(hi == doctest::Approx(1.0));
  }
  const Domain s = unit_square();
  const auto [a, b] = support_interval(s, 0.0);
  CHECK(a == doctest::Approx(0.0));
  CHECK(b == doctest::Approx(1.0));
  // Vertex-projection oracle at theta = pi/4.
  const auto [c, e] = support_interval(s, kPi / 4);
  const Vec2 n = Line(kPi / 4, 0.0).normal();
  double lo_o = 1e300, hi_o = -1e300;
  for (const Vec2 v : {Vec2{0, 0}, Vec2{1, 0}, Vec2{1, 1}, Vec2{0, 1}}) {
    lo_o = std::min(lo_o, v.dot(n));
    hi_o = std::max(hi_o, v.dot(n));
  }
  CHECK(c == doctest::Approx(lo_o));
  CHECK(e == doctest::Approx(hi_o));
}

TEST_CASE("curves: lengths and points") {
  const Curve seg{Segment{{0, 0}, {1, 0}}};
  CHECK(seg.length() == doctest::Approx(1.0));
  CHECK(seg.point_at(0.25).x == doctest::Approx(0.25));
  const Curve arc{CircleArc{{0, 0}, 0.5, 0.0, kPi / 2}};
  CHECK(arc.length() == doctest::Approx(kPi / 4));
  const Curve poly{Polyline{{{0, 0}, {1, 0}, {1, 1}}}};
  CHECK(poly.length() == doctest::Approx(2.0));
  CHECK(poly.point_at(1.5).y == doctest::Approx(0.5));
}
