#pragma once

#include "varjacobi/jet.hpp"
#include "varjacobi/problem.hpp"

#include <utility>

namespace varjacobi {

// First-order linear Hamiltonian form of the Jacobi equation of a band
// problem: (y, z)' = H(t) (y, z) with
//
//   H = [ A  B ]   A: identity super-diagonal, bottom-right -M_kk^{-1} M_(k-1)k^T
//       [ C -A^T]  B: bottom-right M_kk^{-1}
//                  C: block tridiagonal of M_ii / M_i(i+1), bottom-right
//                     M_(k-1)(k-1) - M_(k-1)k M_kk^{-1} M_(k-1)k^T
//
// B and C are symmetric by construction, so H^T J + J H = 0 identically with
// J = [[0, I], [-I, 0]]. Blocks involving M_kk^{-1} are evaluated per t.
class HamiltonianSystem {
 public:
  explicit HamiltonianSystem(VariationalProblem prob);

  const VariationalProblem& problem() const { return prob_; }
  Eigen::Index half_dim() const { return kn_; }  // kn
  Eigen::Index dim() const { return 2 * kn_; }   // 2kn

  Eigen::MatrixXd A(double t) const;
  Eigen::MatrixXd B(double t) const;
  Eigen::MatrixXd C(double t) const;
  Eigen::MatrixXd H(double t) const;

  // Exact derivatives of H at t up to the requested order (polynomial
  // calculus on the blocks; the M_kk^{-1} jets come from the inverse-jet
  // recursion, never from finite differences).
  MatrixJet H_jet(double t, int order) const;

  Eigen::MatrixXd J() const { return J(kn_); }
  static Eigen::MatrixXd J(Eigen::Index half_dim);

 private:
  VariationalProblem prob_;
  Eigen::Index kn_;

  Eigen::MatrixXd mkk_inverse(double t) const;
};

HamiltonianSystem build_blocks(const VariationalProblem& prob);
Eigen::MatrixXd hamiltonian_matrix(const HamiltonianSystem& sys, double t);

// Max over the grid of |H^T J + J H|_F / (1 + |H|_F).
double check_infinitesimally_symplectic(const HamiltonianSystem& sys,
                                        int grid_points = 257);

// (y, z) with y = (h, ..., h^(k-1)) and z supported in the last block,
// z_k = M_kk(t) h^(k) + M_(k-1)k(t)^T h^(k-1). Requires a jet of order >= k.
std::pair<Eigen::VectorXd, Eigen::VectorXd> zeroing_transform(
    const VariationalProblem& prob, const JetVector& jet, double t);

// Full Legendre transform of a (2k-1)-jet:
//   y = (h, ..., h^(k-1)),  z_i = sum_{j=i..k} (-1)^(j-i) (d/dt)^(j-i) dL/dq_j,
// expanded exactly with the Leibniz rule on the polynomial blocks.
// Coincides with zeroing_transform for k = 1.
std::pair<Eigen::VectorXd, Eigen::VectorXd> legendre_transform(
    const VariationalProblem& prob, const JetVector& jet, double t);

double lagrangian_value(const VariationalProblem& prob, const JetVector& jet,
                        double t);
double lagrangian_value(const RawCoefficients& raw, const JetVector& jet,
                        double t);

}  // namespace varjacobi
