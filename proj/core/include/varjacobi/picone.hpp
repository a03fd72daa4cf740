#pragma once

#include "varjacobi/conjugacy.hpp"
#include "varjacobi/frame_trajectory.hpp"
#include "varjacobi/test_field.hpp"

#include <utility>

namespace varjacobi {

struct PiconePointResult {
  double lhs = 0.0;  // d/dt (y^T Z Y^{-1} y), by the exact product rule
  double rhs = 0.0;  // z^T B z + y^T C y - (z - Z Y^{-1} y)^T B (z - Z Y^{-1} y)
  double cond_y = 0.0;
};

// Pointwise identity at a grid time. Y must be invertible there
// (cond(Y) < 1e8); the derivative side uses Y' = AY + BZ, Z' = CY - A^T Z and
// d/dt Y^{-1} = -Y^{-1} Y' Y^{-1}, never finite differences.
PiconePointResult picone_lhs_rhs(const VariationalProblem& prob,
                                 const FrameTrajectory& traj,
                                 const TestField& field, std::size_t t_index);

// Exact Gauss-Legendre value of the functional along the field's polynomial
// jet (node count chosen from the integrand degree).
double functional_value(const VariationalProblem& prob, const TestField& field);
double functional_value(const RawCoefficients& raw, const TestField& field);
double functional_value(const ScalarProblem1D& sp, const TestField& field);

struct PiconeFunctional {
  double value = 0.0;
  bool guard_triggered = false;
  // End of the near-a window where the integrand is carried by the exact
  // boundary identity instead of the raw Y^{-1} evaluation.
  double window_end = 0.0;
};

// Q[h] = 1/2 integral of (z - Z Y^{-1} y)^T B (z - Z Y^{-1} y). Refuses when
// the scan found conjugate points. Near a the identity
// int_a^tc (z-Sy)^T B (z-Sy) = int_a^tc 2L - y^T S y |_tc carries the window
// exactly; the bulk is composite Gauss-Legendre along the trajectory with a
// cap guard on |Z Y^{-1} y|.
PiconeFunctional functional_via_picone(const VariationalProblem& prob,
                                       const FrameTrajectory& traj,
                                       const TestField& field,
                                       const ConjugacyResult& conjugacy);

struct SymmetryResiduals {
  double yz_commutator = 0.0;      // max |Y^T Z - Z^T Y| / (1 + |Y||Z|)
  double riccati_asymmetry = 0.0;  // max |S - S^T| / (1 + |S|), cond(Y) < 1e8
};

SymmetryResiduals frame_symmetry_residuals(const FrameTrajectory& traj);

// Rayleigh-Ritz oracle: smallest generalized eigenvalue of the functional's
// Gram matrix against the L2 Gram on the basis
// (t-a)^k (b-t)^k T_p(t) e_c, with T_p shifted Legendre polynomials.
double discrete_hessian_min_eig(const VariationalProblem& prob,
                                int basis_size = 12);

}  // namespace varjacobi
