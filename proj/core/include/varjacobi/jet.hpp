#pragma once

#include "varjacobi/matrix_polynomial.hpp"

#include <vector>

namespace varjacobi {

// Jet of a vector-valued curve at a point: entries[j] is the j-th derivative.
struct JetVector {
  std::vector<Eigen::VectorXd> entries;

  int order() const { return static_cast<int>(entries.size()) - 1; }
  Eigen::Index dim() const {
    return entries.empty() ? 0 : entries.front().size();
  }
};

// Jet of a matrix-valued function at a point: element m is the m-th
// derivative (not divided by m!).
using MatrixJet = std::vector<Eigen::MatrixXd>;

MatrixJet poly_jet(const MatrixPolynomial& p, double t, int order);
JetVector poly_vector_jet(const MatrixPolynomial& p /* n x 1 */, double t,
                          int order);

MatrixJet jet_transpose(const MatrixJet& a);
MatrixJet jet_add(const MatrixJet& a, const MatrixJet& b);
MatrixJet jet_sub(const MatrixJet& a, const MatrixJet& b);
MatrixJet jet_neg(const MatrixJet& a);
// Leibniz product; the result order is the smaller of the operand orders.
MatrixJet jet_product(const MatrixJet& a, const MatrixJet& b);
// Jets of t -> a(t)^{-1}; a[0] must be invertible. Derived order by order
// from sum_{j<=m} C(m,j) a^(j) inv^(m-j) = 0.
MatrixJet jet_inverse(const MatrixJet& a);

}  // namespace varjacobi
