#include "varjacobi/frame_trajectory.hpp"

#include <cmath>
#include <stdexcept>

namespace varjacobi {

namespace {

Eigen::MatrixXd rk4_step(const HamiltonianSystem& sys, double t, double h,
                         const Eigen::MatrixXd& psi) {
  Eigen::MatrixXd h0 = sys.H(t);
  Eigen::MatrixXd hm = sys.H(t + 0.5 * h);
  Eigen::MatrixXd h1 = sys.H(t + h);
  Eigen::MatrixXd k1 = h0 * psi;
  Eigen::MatrixXd k2 = hm * (psi + (0.5 * h) * k1);
  Eigen::MatrixXd k3 = hm * (psi + (0.5 * h) * k2);
  Eigen::MatrixXd k4 = h1 * (psi + h * k3);
  return psi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

FrameTrajectory::FrameTrajectory(HamiltonianSystem sys,
                                 std::vector<double> grid,
                                 std::vector<Eigen::MatrixXd> frames,
                                 double step)
    : sys_(std::move(sys)), grid_(std::move(grid)), frames_(std::move(frames)),
      step_(step) {
  if (grid_.size() < 2 || grid_.size() != frames_.size())
    throw std::invalid_argument("grid and frame counts inconsistent");
}

Eigen::MatrixXd FrameTrajectory::frame_at(double t) const {
  if (t < a() - 1e-12 * (b() - a()) || t > b() + 1e-12 * (b() - a()))
    throw std::out_of_range("time outside the integrated interval");
  t = std::min(std::max(t, a()), b());
  auto idx = static_cast<std::size_t>((t - a()) / step_);
  if (idx >= steps()) idx = steps();
  while (idx > 0 && grid_[idx] > t) --idx;
  double dt = t - grid_[idx];
  if (std::abs(dt) < 1e-14 * (b() - a())) return frames_[idx];
  return rk4_step(sys_, grid_[idx], dt, frames_[idx]);
}

void FrameTrajectory::corrupt_frame(std::size_t index, double magnitude) {
  if (index >= frames_.size())
    throw std::out_of_range("frame index out of range");
  frames_[index](0, 0) += magnitude;
}

std::vector<Eigen::MatrixXd> integrate_matrix(const HamiltonianSystem& sys,
                                              double step,
                                              const Eigen::MatrixXd& init,
                                              std::vector<double>* grid_out) {
  const double a = sys.problem().a();
  const double b = sys.problem().b();
  if (!(step > 0.0) || step > (b - a) / 16.0)
    throw std::invalid_argument("step must be positive and at most (b-a)/16");
  auto n_steps = static_cast<std::size_t>(std::llround((b - a) / step));
  if (n_steps < 16) n_steps = 16;

  std::vector<Eigen::MatrixXd> frames;
  frames.reserve(n_steps + 1);
  frames.push_back(init);
  if (grid_out) {
    grid_out->clear();
    grid_out->reserve(n_steps + 1);
    grid_out->push_back(a);
  }
  for (std::size_t j = 0; j < n_steps; ++j) {
    double t0 = a + (b - a) * static_cast<double>(j) / static_cast<double>(n_steps);
    double t1 = (j + 1 == n_steps)
                    ? b
                    : a + (b - a) * static_cast<double>(j + 1) /
                              static_cast<double>(n_steps);
    frames.push_back(rk4_step(sys, t0, t1 - t0, frames.back()));
    if (grid_out) grid_out->push_back(t1);
  }
  return frames;
}

FrameTrajectory integrate_frame(const HamiltonianSystem& sys, double step) {
  std::vector<double> grid;
  Eigen::MatrixXd init = -sys.J();
  std::vector<Eigen::MatrixXd> frames = integrate_matrix(sys, step, init, &grid);
  double actual = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
  return FrameTrajectory(sys, std::move(grid), std::move(frames), actual);
}

double symplectic_drift(const FrameTrajectory& traj) {
  Eigen::MatrixXd j = traj.system().J();
  double worst = 0.0;
  for (const auto& psi : traj.frames()) {
    worst = std::max(worst, (psi.transpose() * j * psi - j).norm());
  }
  return worst;
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> vertical_frame(
    const FrameTrajectory& traj, std::size_t t_index) {
  if (t_index >= traj.frames().size())
    throw std::out_of_range("frame index out of range");
  return vertical_blocks(traj.frames()[t_index]);
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> vertical_blocks(
    const Eigen::MatrixXd& frame) {
  Eigen::Index kn = frame.rows() / 2;
  return {frame.topLeftCorner(kn, kn), frame.bottomLeftCorner(kn, kn)};
}

}  // namespace varjacobi
