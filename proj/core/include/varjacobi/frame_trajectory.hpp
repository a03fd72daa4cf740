#pragma once

#include "varjacobi/hamiltonian.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace varjacobi {

// Fundamental solution frame of Psi' = H(t) Psi, Psi(a) = -J, sampled on a
// uniform grid by classical fixed-step RK4 (global error O(step^4)). The
// first kn columns start on the vertical space (y = 0, z = e_i).
class FrameTrajectory {
 public:
  FrameTrajectory(HamiltonianSystem sys, std::vector<double> grid,
                  std::vector<Eigen::MatrixXd> frames, double step);

  const HamiltonianSystem& system() const { return sys_; }
  const std::vector<double>& grid() const { return grid_; }
  const std::vector<Eigen::MatrixXd>& frames() const { return frames_; }
  double step() const { return step_; }
  double a() const { return grid_.front(); }
  double b() const { return grid_.back(); }
  std::size_t steps() const { return grid_.size() - 1; }

  // Frame at an arbitrary t in [a, b]: one RK4 substep from the nearest grid
  // point at or below t (local error O(step^5), so off-grid values keep the
  // global accuracy order).
  Eigen::MatrixXd frame_at(double t) const;

  // Fault-injection hook for the verification tooling: perturbs one stored
  // frame so downstream residual checks must notice.
  void corrupt_frame(std::size_t index, double magnitude);

 private:
  HamiltonianSystem sys_;
  std::vector<double> grid_;
  std::vector<Eigen::MatrixXd> frames_;
  double step_;
};

// RK4 integration of Psi' = H(t) Psi from t = a with Psi(a) = init.
// Requires 0 < step <= (b-a)/16; the actual step is (b-a)/N for the nearest
// integer N so the grid lands exactly on b.
std::vector<Eigen::MatrixXd> integrate_matrix(const HamiltonianSystem& sys,
                                              double step,
                                              const Eigen::MatrixXd& init,
                                              std::vector<double>* grid_out = nullptr);

FrameTrajectory integrate_frame(const HamiltonianSystem& sys, double step);

// Max over the grid of |Psi^T J Psi - J|_F.
double symplectic_drift(const FrameTrajectory& traj);

// (Y, Z) blocks of the first kn columns at a grid index; Y(a) = 0, Z(a) = I.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> vertical_frame(
    const FrameTrajectory& traj, std::size_t t_index);

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> vertical_blocks(
    const Eigen::MatrixXd& frame);

}  // namespace varjacobi
