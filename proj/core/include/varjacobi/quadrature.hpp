#pragma once

#include <functional>
#include <vector>

namespace varjacobi {

// Nodes and weights on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule with n nodes (exact through degree 2n-1). Cached and
// safe to call concurrently.
const QuadratureRule& gauss_legendre(int n);

// Smallest node count that integrates polynomials of the given degree exactly.
int nodes_for_degree(int degree);

double integrate(const std::function<double(double)>& f, double a, double b,
                 int nodes, int panels = 1);

}  // namespace varjacobi
