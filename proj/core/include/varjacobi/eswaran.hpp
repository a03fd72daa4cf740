#pragma once

#include "varjacobi/conjugacy.hpp"
#include "varjacobi/problem.hpp"
#include "varjacobi/test_field.hpp"

#include <Eigen/Dense>

#include <vector>

namespace varjacobi {

// k solutions of the scalar order-2k Jacobi equation with vertical data,
// stored as the 2k x k state matrix of the companion first-order system
// (rows = derivatives 0..2k-1, columns = solutions sigma_1..sigma_k).
class ScalarSolutionSet {
 public:
  ScalarSolutionSet(ScalarProblem1D sp, std::vector<double> grid,
                    std::vector<Eigen::MatrixXd> states, double step);

  const ScalarProblem1D& problem() const { return sp_; }
  const std::vector<double>& grid() const { return grid_; }
  const std::vector<Eigen::MatrixXd>& states() const { return states_; }
  double step() const { return step_; }
  double a() const { return sp_.a(); }
  double b() const { return sp_.b(); }
  std::size_t steps() const { return grid_.size() - 1; }

  // One RK4 substep from the nearest grid point <= t.
  Eigen::MatrixXd state_at(double t) const;

 private:
  ScalarProblem1D sp_;
  std::vector<double> grid_;
  std::vector<Eigen::MatrixXd> states_;
  double step_;
};

// Integrate the companion system with RK4. Default seed is vertical data:
// sigma_j has derivatives k..2k-1 equal to the j-th identity column at a and
// derivatives 0..k-1 zero. A custom 2k x k seed overrides it.
ScalarSolutionSet scalar_vertical_solutions(
    const ScalarProblem1D& sp, double step,
    const Eigen::MatrixXd& seed = Eigen::MatrixXd());

// det of the top k x k block (derivatives 0..k-1) of the solution states.
double scalar_subwronskian(const ScalarSolutionSet& sols, std::size_t t_index);
double scalar_subwronskian_at(const ScalarSolutionSet& sols, double t);

// Bordered-determinant ratio in Schur form:
//   (-1)^k (h^(k) - r T^{-1} h_top)
// with T the top k x k solution block, r the row (sigma_1^(k) .. sigma_k^(k)),
// h_top = (h, h', .., h^(k-1)). h_jet must carry orders 0..k.
double eswaran_ratio(const std::vector<double>& h_jet,
                     const ScalarSolutionSet& sols, double t);

struct EswaranCheck {
  double lhs = 0.0;  // functional value, exact quadrature
  double rhs = 0.0;  // integral of P_k ratio^2 (+ exact near-a window)
  bool guard_triggered = false;
  double window_end = 0.0;
};

// Route-independent positivity identity for scalar problems: the functional
// equals the weighted square of the bordered ratio whenever the top block
// stays invertible on (a, b]. The near-a window is carried by the exact
// boundary identity evaluated from the sigma jets alone.
EswaranCheck eswaran_integrated_check(const ScalarProblem1D& sp,
                                      const TestField& field,
                                      const ScalarSolutionSet& sols);

// Zero scan of the scalar sub-Wronskian, same policy as the frame route.
ConjugacyResult scalar_conjugate_points(const ScalarSolutionSet& sols,
                                        const ConjugacyOptions& opts = {});

}  // namespace varjacobi
