#include "varjacobi/frame_trajectory.hpp"

#include <doctest.h>

#include "support/battery.hpp"

#include <cmath>
#include <stdexcept>

using namespace varjacobi;

TEST_SUITE("frame_trajectory") {

TEST_CASE("initial frame is exactly minus J") {
  HamiltonianSystem sys(battery::harmonic());
  FrameTrajectory traj = integrate_frame(sys, 1.0 / 64);
  CHECK((traj.frames().front() + HamiltonianSystem::J(1)).norm() == 0.0);
  CHECK(traj.grid().front() == 0.0);
  CHECK(traj.grid().back() == 1.0);
}

TEST_CASE("unit harmonic frame at the quarter period") {
  // hdot^2 - h^2 on [0, pi]: the vertical column is (sin, cos), so the
  // top-left entry at pi/2 is +1.
  VariationalProblem prob = battery::harmonic(3.2, 1.0);
  HamiltonianSystem sys(prob);
  FrameTrajectory traj = integrate_frame(sys, 3.2 / 4096);
  Eigen::MatrixXd psi = traj.frame_at(std::acos(-1.0) / 2);
  CHECK(psi(0, 0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(psi(1, 0) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("harmonic vertical column matches sin and cos") {
  HamiltonianSystem sys(battery::harmonic(2.0));
  FrameTrajectory traj = integrate_frame(sys, 2.0 / 4096);
  for (double t : {0.1, 0.31830988618, 0.75, 1.5, 2.0}) {
    Eigen::MatrixXd psi = traj.frame_at(t);
    CHECK(std::abs(psi(0, 0) - std::sin(t) / 2) <= 1e-10);
    CHECK(std::abs(psi(1, 0) - std::cos(t)) <= 1e-10);
  }
}

TEST_CASE("grid is uniform and hits both endpoints") {
  HamiltonianSystem sys(battery::quartic());
  FrameTrajectory traj = integrate_frame(sys, 1.0 / 100);
  const auto& grid = traj.grid();
  REQUIRE(grid.size() == traj.frames().size());
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == 1.0);
  for (std::size_t i = 1; i < grid.size(); ++i)
    CHECK(grid[i] > grid[i - 1]);
}

TEST_CASE("step validation") {
  HamiltonianSystem sys(battery::harmonic());
  CHECK_THROWS_AS(integrate_frame(sys, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(integrate_frame(sys, -0.25), std::invalid_argument);
  CHECK_THROWS_AS(integrate_frame(sys, 0.3), std::invalid_argument);
}

TEST_CASE("vertical blocks start as the distinguished solution set") {
  std::mt19937_64 rng(41);
  VariationalProblem prob = battery::random_band(rng, 2, 2);
  HamiltonianSystem sys(prob);
  FrameTrajectory traj = integrate_frame(sys, 1.0 / 512);
  auto [y0, z0] = vertical_frame(traj, 0);
  CHECK(y0.norm() == 0.0);
  CHECK((z0 - Eigen::MatrixXd::Identity(4, 4)).norm() == 0.0);
  auto [yb, zb] = vertical_blocks(traj.frames().back());
  auto [yf, zf] = vertical_frame(traj, traj.steps());
  CHECK((yb - yf).norm() == 0.0);
  CHECK((zb - zf).norm() == 0.0);
}

TEST_CASE("symplectic drift stays small across the battery") {
  for (const auto& prob : battery::standard_battery(42, 8)) {
    HamiltonianSystem sys(prob);
    FrameTrajectory traj = integrate_frame(sys, 1.0 / 4096);
    Eigen::MatrixXd last = traj.frames().back();
    double scale = 1.0 + last.squaredNorm();
    CHECK(symplectic_drift(traj) <= 1e-9 * scale);
  }
}

TEST_CASE("corrupting a frame shows up in the drift") {
  HamiltonianSystem sys(battery::harmonic());
  FrameTrajectory traj = integrate_frame(sys, 1.0 / 1024);
  double clean = symplectic_drift(traj);
  traj.corrupt_frame(512, 1e-3);
  CHECK(symplectic_drift(traj) > 1e-6);
  CHECK(symplectic_drift(traj) > 100 * clean);
}

TEST_CASE("frame_at interpolates between grid points") {
  HamiltonianSystem sys(battery::harmonic(2.0));
  FrameTrajectory traj = integrate_frame(sys, 2.0 / 512);
  // Halfway between grid nodes; compare against the analytic flow.
  double t = traj.grid()[100] + 0.5 * traj.step();
  Eigen::MatrixXd psi = traj.frame_at(t);
  CHECK(std::abs(psi(0, 0) - std::sin(t) / 2) <= 1e-9);
  CHECK(std::abs(psi(1, 0) - std::cos(t)) <= 1e-9);
  CHECK_THROWS_AS(traj.frame_at(-0.1), std::out_of_range);
  CHECK_THROWS_AS(traj.frame_at(2.5), std::out_of_range);
}

}  // TEST_SUITE
