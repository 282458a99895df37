#pragma once

namespace gmc {

// Closed-form exponent algebra governing uniform convergence and parameter
// Hoelder continuity of total chaos masses.

struct ThresholdInput {
  double alpha1{1.0};       // measure growth exponent, > 0
  double alpha2{1.0};       // map Hoelder exponent, >= 0
  double alpha2prime{0.5};  // symmetric-difference exponent, >= 0
  int k{2};                 // parameter-space dimension, >= 1
  double gamma{0.0};        // chaos parameter, > 0
  double lambda() const;    // min(alpha2, 2*alpha2prime), must be > 0
};

struct ThresholdReport {
  double s_at_p_star;
  double n_value;
  double m_value;
  double p_star;
  double q_star;
  double margin;  // m - n
  bool mcond;     // m > n
  double critical_gamma;
};

// Moment-decay exponent s_{alpha1,gamma}(p):
//   (alpha1 - gamma^2 p / 2)(p - 1)                          for 1 <= p <= 2,
//   min{ (alpha1 - gamma^2) p/2, (alpha1 - gamma^2 p/2)(p-1) } for p > 2.
double s_exponent(double alpha1, double gamma, double p);

// m(alpha1, gamma) = (alpha1/gamma - gamma/2)^2 / 2, the maximum of
// s_exponent over p >= 1.
double m_value(double alpha1, double gamma);

// n(lambda, k, gamma) = ((4k^2 - lambda k)/lambda^2) g^2
//   + (2k/lambda^2) g sqrt(4 k^2 g^2 + 2k(1-g^2) lambda) + k/lambda.
double n_value(double lambda, int k, double gamma);

// Optimizers: p* = alpha1/gamma^2 + 1/2 maximizes s_exponent;
// q* = (2k + sqrt(4k^2 + 2k(1/gamma^2 - 1) lambda)) / lambda minimizes
// (gamma^2 q^2 + (1-gamma^2) q)/(lambda q - 2k) over q > 2k/lambda.
double p_star(double alpha1, double gamma);
double q_star(double lambda, int k, double gamma);

// Margin m - n and the verdict m > n.
struct McondResult {
  double margin;
  bool holds;
};
McondResult check_mcond(const ThresholdInput& in);

// Smallest gamma in (0, sqrt(2 alpha1)) where m(alpha1, .) = n(lambda, k, .),
// found by bisection on the margin; tolerance 1e-12.
double critical_gamma(double lambda, int k, double alpha1);

ThresholdReport threshold_report(const ThresholdInput& in);

}  // namespace gmc
