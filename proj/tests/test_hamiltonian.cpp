#include "varjacobi/frame_trajectory.hpp"
#include "varjacobi/hamiltonian.hpp"

#include <doctest.h>

#include "support/battery.hpp"

#include <cmath>

using namespace varjacobi;

TEST_SUITE("hamiltonian") {

TEST_CASE("harmonic blocks by hand") {
  HamiltonianSystem sys(battery::harmonic());
  CHECK(sys.half_dim() == 1);
  CHECK(sys.A(0.3)(0, 0) == 0.0);
  CHECK(sys.B(0.3)(0, 0) == doctest::Approx(0.5));
  CHECK(sys.C(0.3)(0, 0) == doctest::Approx(-2.0));
  Eigen::MatrixXd h = sys.H(0.3);
  CHECK(h(0, 0) == 0.0);
  CHECK(h(0, 1) == doctest::Approx(0.5));
  CHECK(h(1, 0) == doctest::Approx(-2.0));
  CHECK(h(1, 1) == 0.0);
}

TEST_CASE("quartic blocks by hand") {
  HamiltonianSystem sys(battery::quartic());
  // A carries the jet shift, B the inverse top block, C vanishes.
  Eigen::MatrixXd a = sys.A(0.7);
  CHECK(a(0, 1) == 1.0);
  CHECK(a(0, 0) == 0.0);
  CHECK(a(1, 0) == 0.0);
  CHECK(a(1, 1) == 0.0);
  Eigen::MatrixXd b = sys.B(0.7);
  CHECK(b(1, 1) == doctest::Approx(0.5));
  CHECK(b.norm() == doctest::Approx(0.5));
  CHECK(sys.C(0.7).norm() == 0.0);
}

TEST_CASE("J is the standard symplectic form") {
  Eigen::MatrixXd j = HamiltonianSystem::J(3);
  CHECK((j + j.transpose()).norm() == 0.0);
  CHECK((j * j + Eigen::MatrixXd::Identity(6, 6)).norm() == 0.0);
}

TEST_CASE("H is infinitesimally symplectic across the battery") {
  for (const auto& prob : battery::standard_battery()) {
    HamiltonianSystem sys(prob);
    CHECK(check_infinitesimally_symplectic(sys) <= 1e-12);
    CHECK((sys.C(0.37) - sys.C(0.37).transpose()).norm() == 0.0);
    CHECK((sys.B(0.37) - sys.B(0.37).transpose()).norm() == 0.0);
  }
}

TEST_CASE("H jets match central differences") {
  std::mt19937_64 rng(31);
  VariationalProblem prob = battery::random_band(rng, 3, 2);
  HamiltonianSystem sys(prob);
  const double fd = 1e-4;
  for (double t : {0.2, 0.55, 0.9}) {
    MatrixJet jet = sys.H_jet(t, 2);
    CHECK((jet[0] - sys.H(t)).norm() <= 1e-14 * (1.0 + sys.H(t).norm()));
    Eigen::MatrixXd d1 = (sys.H(t + fd) - sys.H(t - fd)) / (2.0 * fd);
    Eigen::MatrixXd d2 =
        (sys.H(t + fd) - 2.0 * sys.H(t) + sys.H(t - fd)) / (fd * fd);
    CHECK((jet[1] - d1).norm() <= 1e-5 * (1.0 + d1.norm()));
    CHECK((jet[2] - d2).norm() <= 1e-4 * (1.0 + d2.norm()));
  }
}

TEST_CASE("zeroing transform stacks the jet and fills only the last block") {
  std::mt19937_64 rng(32);
  VariationalProblem prob = battery::random_band(rng, 3, 2);
  TestField field = TestField::random(rng, 3, 0.0, 1.0, 2, 3);
  double t = 0.6;
  JetVector jet = field.jet(t, 3);
  auto [yhat, zhat] = zeroing_transform(prob, jet, t);
  REQUIRE(yhat.size() == 6);
  REQUIRE(zhat.size() == 6);
  for (int i = 0; i < 3; ++i)
    CHECK((yhat.segment(2 * i, 2) - jet.entries[static_cast<std::size_t>(i)])
              .norm() == 0.0);
  CHECK(zhat.head(4).norm() == 0.0);
  Eigen::VectorXd want = prob.diag(3).eval(t) * jet.entries[3] +
                         prob.super(2).eval(t).transpose() * jet.entries[2];
  CHECK((zhat.tail(2) - want).norm() <= 1e-13 * (1.0 + want.norm()));
}

TEST_CASE("legendre transform hand case") {
  // L = 1/2 hddot^2, jet (0, 0, 1, 2): z = (-d/dt dL/dq2, dL/dq2) = (-2, 1).
  VariationalProblem prob = battery::quartic(1.0);
  JetVector jet;
  jet.entries = {Eigen::VectorXd::Zero(1), Eigen::VectorXd::Zero(1),
                 Eigen::VectorXd::Ones(1), 2.0 * Eigen::VectorXd::Ones(1)};
  auto [y, z] = legendre_transform(prob, jet, 0.5);
  CHECK(y.norm() == 0.0);
  CHECK(z(0) == doctest::Approx(-2.0));
  CHECK(z(1) == doctest::Approx(1.0));
}

TEST_CASE("legendre transform coincides with the zeroing transform for k=1") {
  std::mt19937_64 rng(33);
  VariationalProblem prob = battery::random_band(rng, 1, 3);
  for (int trial = 0; trial < 5; ++trial) {
    JetVector jet;
    jet.entries = {Eigen::VectorXd::NullaryExpr(
                       3, [&](Eigen::Index) { return battery::pm1(rng); }),
                   Eigen::VectorXd::NullaryExpr(
                       3, [&](Eigen::Index) { return battery::pm1(rng); })};
    auto [y1, z1] = legendre_transform(prob, jet, 0.4);
    auto [y2, z2] = zeroing_transform(prob, jet, 0.4);
    CHECK((y1 - y2).norm() == 0.0);
    CHECK((z1 - z2).norm() <= 1e-13 * (1.0 + z2.norm()));
  }
}

TEST_CASE("lagrangian value by hand") {
  JetVector jet;
  jet.entries = {0.3 * Eigen::VectorXd::Ones(1), 0.7 * Eigen::VectorXd::Ones(1)};
  VariationalProblem prob = battery::harmonic();
  CHECK(lagrangian_value(prob, jet, 0.2) == doctest::Approx(0.49 - 0.09));
  CHECK(lagrangian_value(to_raw(prob), jet, 0.2) ==
        doctest::Approx(0.49 - 0.09));
}

TEST_CASE("the zeroing transform reproduces twice the lagrangian") {
  std::mt19937_64 rng(34);
  for (const auto& prob : battery::standard_battery(34, 6)) {
    HamiltonianSystem sys(prob);
    int k = prob.order();
    auto n = prob.dim();
    for (int trial = 0; trial < 10; ++trial) {
      double t = battery::uniform01(rng);
      JetVector jet;
      jet.entries.resize(static_cast<std::size_t>(k) + 1);
      for (auto& e : jet.entries)
        e = Eigen::VectorXd::NullaryExpr(
            n, [&](Eigen::Index) { return battery::pm1(rng); });
      auto [yhat, zhat] = zeroing_transform(prob, jet, t);
      double two_l = 2.0 * lagrangian_value(prob, jet, t);
      double rhs = zhat.dot(sys.B(t) * zhat) + yhat.dot(sys.C(t) * yhat);
      CHECK(std::abs(two_l - rhs) <= 1e-10 * (1.0 + std::abs(two_l)));
    }
  }
}

TEST_CASE("legendre transform of a jacobi solution follows the flow") {
  // Analytic solutions: sin(t) for the harmonic problem, t^3 for the
  // fourth-order one. Transporting the transformed jet with the Hamiltonian
  // flow must reproduce the transform of the jet at every time.
  SUBCASE("harmonic") {
    VariationalProblem prob = battery::harmonic(2.0);
    HamiltonianSystem sys(prob);
    auto jet_at = [](double t) {
      JetVector jet;
      jet.entries = {std::sin(t) * Eigen::VectorXd::Ones(1),
                     std::cos(t) * Eigen::VectorXd::Ones(1)};
      return jet;
    };
    auto [y0, z0] = legendre_transform(prob, jet_at(0.0), 0.0);
    Eigen::MatrixXd init(2, 1);
    init << y0(0), z0(0);
    std::vector<double> grid;
    auto states = integrate_matrix(sys, 2.0 / 1024, init, &grid);
    for (std::size_t i = 0; i < grid.size(); i += 64) {
      auto [y, z] = legendre_transform(prob, jet_at(grid[i]), grid[i]);
      CHECK(std::abs(states[i](0, 0) - y(0)) <= 1e-7);
      CHECK(std::abs(states[i](1, 0) - z(0)) <= 1e-7);
    }
  }
  SUBCASE("fourth order") {
    VariationalProblem prob = battery::quartic();
    HamiltonianSystem sys(prob);
    auto jet_at = [](double t) {
      JetVector jet;
      jet.entries = {t * t * t * Eigen::VectorXd::Ones(1),
                     3 * t * t * Eigen::VectorXd::Ones(1),
                     6 * t * Eigen::VectorXd::Ones(1),
                     6 * Eigen::VectorXd::Ones(1)};
      return jet;
    };
    auto [y0, z0] = legendre_transform(prob, jet_at(0.0), 0.0);
    Eigen::VectorXd init(4);
    init << y0, z0;
    std::vector<double> grid;
    auto states = integrate_matrix(sys, 1.0 / 1024, init, &grid);
    for (std::size_t i = 0; i < grid.size(); i += 64) {
      auto [y, z] = legendre_transform(prob, jet_at(grid[i]), grid[i]);
      CHECK((states[i].col(0).head(2) - y).norm() <= 1e-7);
      CHECK((states[i].col(0).tail(2) - z).norm() <= 1e-7);
    }
  }
}

}  // TEST_SUITE
