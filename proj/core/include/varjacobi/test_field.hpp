#pragma once

#include "varjacobi/jet.hpp"
#include "varjacobi/problem.hpp"

#include <random>

namespace varjacobi {

// Admissible variation h(t) = (t-a)^k (b-t)^k q(t) for a polynomial q with
// values in R^n. The boundary factor makes h vanish to order k-1 at both
// endpoints for any q.
class TestField {
 public:
  TestField(int order_k, double a, double b, MatrixPolynomial q /* n x 1 */);
  TestField(const VariationalProblem& prob, MatrixPolynomial q);

  int order() const { return k_; }
  double a() const { return a_; }
  double b() const { return b_; }
  Eigen::Index dim() const { return q_.rows(); }
  const MatrixPolynomial& q() const { return q_; }
  const MatrixPolynomial& h() const { return h_; }

  // Exact jet of h at t up to the requested order.
  JetVector jet(double t, int order) const;

  double sup_norm(int samples = 1024) const;

  static TestField random(std::mt19937_64& rng, int order_k, double a,
                          double b, Eigen::Index n, int deg);

 private:
  int k_;
  double a_;
  double b_;
  MatrixPolynomial q_;
  MatrixPolynomial h_;
};

}  // namespace varjacobi
