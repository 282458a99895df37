#include "gmcsim/criteria.hpp"

#include <algorithm>
#include <cmath>

#include "gmcsim/error.hpp"

namespace gmc {

double ThresholdInput::lambda() const { return std::min(alpha2, 2.0 * alpha2prime); }

double s_exponent(double alpha1, double gamma, double p) {
  if (p < 1.0) fail(errc::invalid_p, "s_exponent requires p >= 1");
  const double chord = (alpha1 - 0.5 * gamma * gamma * p) * (p - 1.0);
  if (p <= 2.0) return chord;
  return std::min((alpha1 - gamma * gamma) * 0.5 * p, chord);
}

double m_value(double alpha1, double gamma) {
  if (gamma == 0.0) fail(errc::gamma_zero, "m_value");
  const double t = alpha1 / gamma - 0.5 * gamma;
  return 0.5 * t * t;
}

double n_value(double lambda, int k, double gamma) {
  if (!(lambda > 0)) fail(errc::invalid_argument, "n_value: lambda <= 0");
  if (k < 1) fail(errc::invalid_argument, "n_value: k < 1");
  const double g2 = gamma * gamma;
  const double rad = 4.0 * k * k * g2 + 2.0 * k * (1.0 - g2) * lambda;
  // Nonnegative whenever k > lambda/2; reachable only for out-of-convention inputs.
  if (rad < 0) fail(errc::parameter_out_of_range, "n_value: negative radicand");
  return ((4.0 * k * k - lambda * k) / (lambda * lambda)) * g2 +
         (2.0 * k / (lambda * lambda)) * gamma * std::sqrt(rad) + k / lambda;
}

double p_star(double alpha1, double gamma) {
  if (gamma == 0.0) fail(errc::gamma_zero, "p_star");
  return alpha1 / (gamma * gamma) + 0.5;
}

double q_star(double lambda, int k, double gamma) {
  if (gamma == 0.0) fail(errc::gamma_zero, "q_star");
  if (!(lambda > 0)) fail(errc::invalid_argument, "q_star: lambda <= 0");
  const double rad = 4.0 * k * k + 2.0 * k * (1.0 / (gamma * gamma) - 1.0) * lambda;
  if (rad < 0) fail(errc::parameter_out_of_range, "q_star: negative radicand");
  return (2.0 * k + std::sqrt(rad)) / lambda;
}

McondResult check_mcond(const ThresholdInput& in) {
  if (in.gamma == 0.0) fail(errc::gamma_zero, "check_mcond");
  const double lam = in.lambda();
  if (!(lam > 0)) fail(errc::invalid_argument, "check_mcond: lambda <= 0");
  if (!(in.k > 0.5 * lam)) fail(errc::parameter_out_of_range, "check_mcond: k <= lambda/2");
  if (!(in.alpha1 > 0.5 * in.gamma * in.gamma))
    fail(errc::parameter_out_of_range, "check_mcond: alpha1 <= gamma^2/2");
  const double margin = m_value(in.alpha1, in.gamma) - n_value(lam, in.k, in.gamma);
  return {margin, margin > 0.0};
}

double critical_gamma(double lambda, int k, double alpha1) {
  if (!(lambda > 0) || !(alpha1 > 0)) fail(errc::invalid_argument, "critical_gamma");
  if (!(k > 0.5 * lambda)) fail(errc::parameter_out_of_range, "critical_gamma: k <= lambda/2");
  const auto margin = [&](double g) { return m_value(alpha1, g) - n_value(lambda, k, g); };
  // m -> infinity as gamma -> 0 and m -> 0 at gamma = sqrt(2 alpha1), so the
  // margin changes sign on (0, sqrt(2 alpha1)).
  double lo = 1e-12, hi = std::sqrt(2.0 * alpha1) * (1.0 - 1e-12);
  if (!(margin(lo) > 0.0) || !(margin(hi) < 0.0)) fail(errc::no_root, "critical_gamma");
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    (margin(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

ThresholdReport threshold_report(const ThresholdInput& in) {
  const auto res = check_mcond(in);
  const double lam = in.lambda();
  ThresholdReport r;
  r.p_star = p_star(in.alpha1, in.gamma);
  r.q_star = q_star(lam, in.k, in.gamma);
  r.s_at_p_star = s_exponent(in.alpha1, in.gamma, r.p_star);
  r.m_value = m_value(in.alpha1, in.gamma);
  r.n_value = n_value(lam, in.k, in.gamma);
  r.margin = res.margin;
  r.mcond = res.holds;
  r.critical_gamma = critical_gamma(lam, in.k, in.alpha1);
  return r;
}

}  // namespace gmc
