#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gmcsim/gff.hpp"
#include "gmcsim/measures.hpp"

namespace gmc {

// Level-n chaos approximant of a base measure: atom i reweighted by
// 2^{-n gamma^2 / 2} exp(gamma Gamma_i) with Gamma_i the circle average of
// radius 2^{-n} at the atom. gamma = 0 reproduces the base list exactly.
struct GmcApproximant {
  int level{0};
  double gamma{0.0};
  AtomList atoms;
  std::string source;  // seed/replicate tag of the field used
};

GmcApproximant gmc_weight(const AtomList& base, const FieldSample& field, int level, double gamma);
GmcApproximant gmc_weight(const AtomList& base, std::span<const double> gamma_values, int level,
                          double gamma, const std::string& source);

double total_mass(const GmcApproximant& a);

// Coupled total masses Y[r][n - n0] across dyadic levels n0..n1: all
// (atom, 2^-n) pairs enter one node set so that levels are sampled jointly.
struct MassLadder {
  int n0{0};
  int n1{0};
  int replicates{0};
  std::vector<std::vector<double>> mass;  // [replicate][level - n0]
  std::string tag;
  std::uint64_t seed{0};
  double gamma{0.0};
};

MassLadder mass_ladder(const AtomList& base, const Domain& d, double gamma, int n0, int n1,
                       int reps, std::uint64_t seed, int quad_order = 64,
                       std::size_t max_nodes = 8192);

// Moment-decay diagnostics: regression of log2 E|Y_{n+1} - Y_n|^p against n,
// compared to the closed-form bound -s_{alpha1,gamma}(p) plus slack.
struct ConvergenceReport {
  double p{0.0};
  double alpha1{0.0};
  double slope_hat{0.0};
  double bound{0.0};  // s_{alpha1,gamma}(p)
  double slack{0.3};
  bool pass{false};
  bool degenerate{false};  // all increments zero (gamma = 0)
  std::vector<double> log2_moments;
};

ConvergenceReport convergence_report(const MassLadder& ladder, double p, double alpha1,
                                     double slack = 0.3);

// Node set covering every (atom, 2^-n) pair of a ladder, level-major order.
NodeSet ladder_nodes(const AtomList& base, const Domain& d, int n0, int n1, int quad_order,
                     std::size_t max_nodes);

}  // namespace gmc
