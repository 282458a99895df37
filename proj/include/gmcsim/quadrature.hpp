#pragma once

#include <vector>

namespace gmc {

// Gauss-Legendre rule on [0, 1]; nodes computed once per order and cached.
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

const GaussRule& gauss_rule(int n);

}  // namespace gmc
