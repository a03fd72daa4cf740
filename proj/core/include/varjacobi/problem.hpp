#pragma once

#include "varjacobi/matrix_polynomial.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace varjacobi {

// Quadratic functional of a curve h : [a, b] -> R^n in band form:
//
//   Q[h] = integral of  1/2 sum_i h^(i)T M_ii h^(i)
//                       + sum_i h^(i)T M_i(i+1) h^(i+1)   over [a, b],
//
// with every M_ii symmetric (enforced at construction) and M_kk positive
// definite along the interval (checked by validate_problem).
class VariationalProblem {
 public:
  VariationalProblem(int order_k, int dim_n, double a, double b,
                     std::vector<MatrixPolynomial> diag_blocks,
                     std::vector<MatrixPolynomial> super_blocks);

  int order() const { return k_; }
  int dim() const { return n_; }
  double a() const { return a_; }
  double b() const { return b_; }
  const MatrixPolynomial& diag(int i) const;   // M_ii, 0 <= i <= k
  const MatrixPolynomial& super(int i) const;  // M_i(i+1), 0 <= i <= k-1
  // True if a diagonal block arrived non-symmetric and was replaced by its
  // symmetric part.
  bool diagonals_were_symmetrized() const { return symmetrized_; }

 private:
  int k_;
  int n_;
  double a_;
  double b_;
  std::vector<MatrixPolynomial> diag_;
  std::vector<MatrixPolynomial> super_;
  bool symmetrized_ = false;
};

// Unreduced coefficients: Q[h] = integral of
//   sum_i 1/2 h^(i)T Q_ii h^(i) + sum_{i<j} h^(i)T Q_ij h^(j).
// Only keys with 0 <= i <= j <= k are allowed; missing blocks are zero.
struct RawCoefficients {
  int order_k = 1;
  int dim_n = 1;
  double a = 0.0;
  double b = 1.0;
  std::map<std::pair<int, int>, MatrixPolynomial> blocks;
};

// Scalar (n = 1) diagonal form: Q[h] = integral of sum_l P_l (h^(l))^2.
class ScalarProblem1D {
 public:
  ScalarProblem1D(int order_k, double a, double b,
                  std::vector<MatrixPolynomial> p_coeffs /* k+1 of 1x1 */);

  int order() const { return k_; }
  double a() const { return a_; }
  double b() const { return b_; }
  const MatrixPolynomial& p(int l) const;  // P_l, 0 <= l <= k

 private:
  int k_;
  double a_;
  double b_;
  std::vector<MatrixPolynomial> p_;
};

struct ValidationReport {
  bool pass = false;
  // First grid point where the definiteness check failed; NaN when pass.
  double first_failing_t = 0.0;
  // Smallest eigenvalue of M_kk(t) seen over the grid.
  double min_eigenvalue = 0.0;
  std::string message;
};

ValidationReport validate_problem(const VariationalProblem& prob,
                                  int grid_points = 257);
ValidationReport validate_scalar(const ScalarProblem1D& sp,
                                 int grid_points = 257);

// Integration-by-parts rewrite onto the two-band form. Exact on polynomial
// coefficients; the functional value is unchanged for fields that are flat to
// order k-1 at both endpoints. Idempotent on inputs already in band form.
VariationalProblem reduce_to_band(const RawCoefficients& raw);

// n = 1 only: absorb the super-diagonal couplings into the diagonal,
// P_i = 1/2 M_ii - 1/2 (M_i(i+1))', P_k = 1/2 M_kk.
ScalarProblem1D diagonalize_1d(const VariationalProblem& prob);

// Inverse embedding of a scalar problem as a band problem (M_ll = 2 P_l).
VariationalProblem scalar_to_band(const ScalarProblem1D& sp);

RawCoefficients to_raw(const VariationalProblem& prob);

}  // namespace varjacobi
