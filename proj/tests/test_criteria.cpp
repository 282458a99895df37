#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gmcsim/criteria.hpp"
#include "gmcsim/error.hpp"
#include "oracles.hpp"

using namespace gmc;

TEST_CASE("s_exponent branch values") {
  CHECK(s_exponent(1.0, 0.5, 1.0) == doctest::Approx(0.0));
  CHECK(s_exponent(1.0, 0.5, 2.0) == doctest::Approx(0.75));
  CHECK_THROWS_AS(s_exponent(1.0, 0.5, 0.5), error);
  // Continuity at p = 2: both branch formulas give alpha1 - gamma^2.
  for (double a : {0.7, 1.0, 2.0})
    for (double g : {0.1, 0.3, 0.6}) {
      const double chord = (a - 0.5 * g * g * 2.0) * (2.0 - 1.0);
      const double arm = (a - g * g) * 0.5 * 2.0;
      CHECK(chord == doctest::Approx(arm).epsilon(1e-15));
      CHECK(s_exponent(a, g, 2.0) == doctest::Approx(chord));
      CHECK(s_exponent(a, g, 2.0 + 1e-12) == doctest::Approx(chord).epsilon(1e-9));
    }
}

TEST_CASE("m_value and the maximum of s") {
  CHECK(m_value(2.0, 1.0) == doctest::Approx(1.125));
  CHECK_THROWS_AS(m_value(1.0, 0.0), error);
  // Degeneracy at alpha1 = gamma^2/2.
  CHECK(m_value(0.125, 0.5) == doctest::Approx(0.0));
  // Grid-search oracle: max over p of s equals m and is attained at p*.
  for (double a : {0.8, 1.0, 2.0})
    for (double g : {0.15, 0.3, 0.5}) {
      const auto [pm, sm] =
          oracle::grid_max(1.0, 4.0 * (a / (g * g) + 0.5), 2000000,
                           [&](double p) { return s_exponent(a, g, p); });
      CHECK(sm == doctest::Approx(m_value(a, g)).epsilon(1e-6));
      CHECK(pm == doctest::Approx(p_star(a, g)).epsilon(1e-3));
      CHECK(s_exponent(a, g, p_star(a, g)) == doctest::Approx(m_value(a, g)).epsilon(1e-12));
    }
}

TEST_CASE("n_value limits and monotonicity") {
  CHECK(n_value(1.0, 2, 1e-8) == doctest::Approx(2.0).epsilon(1e-6));
  // Monotone increasing in gamma on (0,1) for (lambda,k) = (1,2).
  double prev = n_value(1.0, 2, 1e-3);
  for (int i = 2; i <= 1000; ++i) {
    const double g = i * 1e-3;
    const double cur = n_value(1.0, 2, g);
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("p_star and q_star") {
  CHECK(p_star(1.0, 1.0) == doctest::Approx(1.5));
  CHECK_THROWS_AS(p_star(1.0, 0.0), error);
  // q* minimizes (g^2 q^2 + (1-g^2) q)/(lambda q - 2k) over q > 2k/lambda.
  for (double g : {0.2, 0.3, 0.7}) {
    const double lam = 1.0;
    const int k = 2;
    const auto f = [&](double q) {
      return (g * g * q * q + (1.0 - g * g) * q) / (lam * q - 2.0 * k);
    };
    const double q0 = 2.0 * k / lam;
    const auto [qm, fm] = oracle::grid_min(q0 * 1.0001, q0 + 60.0, 4000000, f);
    CHECK(qm == doctest::Approx(q_star(lam, k, g)).epsilon(1e-4));
    CHECK(fm == doctest::Approx(f(q_star(lam, k, g))).epsilon(1e-8));
  }
  // p* > 1 and q* > 1 whenever alpha1 > gamma^2/2 and k > lambda/2.
  for (double g : {0.1, 0.5, 1.0, 1.3}) {
    if (1.0 > 0.5 * g * g) CHECK(p_star(1.0, g) > 1.0);
    CHECK(q_star(1.0, 2, g) > 1.0);
  }
}

TEST_CASE("mcond verdicts around the chord-family threshold") {
  ThresholdInput in;
  in.alpha1 = 1.0;
  in.alpha2 = 1.0;
  in.alpha2prime = 0.5;
  in.k = 2;
  in.gamma = 0.25;
  CHECK(in.lambda() == doctest::Approx(1.0));
  CHECK(check_mcond(in).holds);
  in.gamma = 0.30;
  CHECK_FALSE(check_mcond(in).holds);
  // Margin grows without bound as gamma -> 0.
  in.gamma = 1e-4;
  CHECK(check_mcond(in).margin > 1e6);
}

TEST_CASE("critical gamma values") {
  const double g21 = critical_gamma(1.0, 2, 1.0);
  CHECK(std::abs(g21 - 0.28477489) < 1e-6);
  // Closed form (1/33) sqrt(858 - 132 sqrt(34)).
  CHECK(g21 == doctest::Approx(std::sqrt(858.0 - 132.0 * std::sqrt(34.0)) / 33.0).epsilon(1e-10));
  const double g11 = critical_gamma(1.0, 1, 1.0);
  CHECK(std::abs(g11 - 0.3975137) < 1e-6);
  CHECK(g11 == doctest::Approx(std::sqrt(238.0 - 136.0 * std::sqrt(2.0)) / 17.0).epsilon(1e-10));
  // Polynomial residual at the root.
  const double g2 = g21 * g21;
  const double g4 = g2 * g2;
  const double poly = 33.0 * g4 * g4 + 344.0 * g4 * g2 - 488.0 * g4 - 160.0 * g2 + 16.0;
  CHECK(std::abs(poly) < 1e-7);
  // m and n cross at the root.
  CHECK(m_value(1.0, g21) == doctest::Approx(n_value(1.0, 2, g21)).epsilon(1e-6));
}

TEST_CASE("mcond is monotone in gamma across the threshold") {
  const double gc = critical_gamma(1.0, 2, 1.0);
  ThresholdInput in;
  in.alpha1 = 1.0;
  in.alpha2 = 1.0;
  in.alpha2prime = 0.5;
  in.k = 2;
  for (double g = 1e-3; g < std::numbers::sqrt2; g += 1e-3) {
    in.gamma = g;
    if (!(in.alpha1 > 0.5 * g * g)) break;
    const bool verdict = check_mcond(in).holds;
    CHECK(verdict == (g < gc));
  }
}

TEST_CASE("critical gamma decreases in k") {
  double prev = critical_gamma(1.0, 1, 1.0);
  for (int k = 2; k <= 8; ++k) {
    const double cur = critical_gamma(1.0, k, 1.0);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("threshold report") {
  ThresholdInput in;
  in.alpha1 = 1.0;
  in.alpha2 = 1.0;
  in.alpha2prime = 0.5;
  in.k = 2;
  in.gamma = 0.25;
  const ThresholdReport r = threshold_report(in);
  CHECK(r.mcond);
  CHECK(r.margin == doctest::Approx(r.m_value - r.n_value));
  CHECK(r.s_at_p_star == doctest::Approx(r.m_value).epsilon(1e-12));
  CHECK(std::abs(r.critical_gamma - 0.28477489) < 1e-6);
}
