#include "varjacobi/jet.hpp"
#include "varjacobi/matrix_polynomial.hpp"
#include "varjacobi/quadrature.hpp"

#include <doctest.h>

#include "support/battery.hpp"

#include <cmath>

using namespace varjacobi;

TEST_SUITE("matrix_polynomial") {

TEST_CASE("evaluation matches the naive power sum") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    MatrixPolynomial p = battery::rand_poly(rng, 3, 5);
    for (double t : {-1.3, 0.0, 0.4, 2.7}) {
      Eigen::MatrixXd naive = Eigen::MatrixXd::Zero(3, 3);
      double tp = 1.0;
      for (int d = 0; d <= p.degree(); ++d) {
        naive += tp * p.coeff(d);
        tp *= t;
      }
      CHECK((p.eval(t) - naive).norm() <= 1e-12 * (1.0 + naive.norm()));
    }
  }
}

TEST_CASE("derivative shifts coefficients") {
  std::mt19937_64 rng(12);
  MatrixPolynomial p = battery::rand_poly(rng, 2, 4);
  MatrixPolynomial dp = p.derivative();
  REQUIRE(dp.degree() == 3);
  for (int d = 0; d <= 3; ++d)
    CHECK((dp.coeff(d) - (d + 1) * p.coeff(d + 1)).norm() == 0.0);
  CHECK(MatrixPolynomial(2, 2).derivative().is_zero());
}

TEST_CASE("trailing zero coefficients are dropped") {
  std::vector<Eigen::MatrixXd> cs{Eigen::MatrixXd::Ones(2, 2),
                                  Eigen::MatrixXd::Zero(2, 2)};
  MatrixPolynomial p(2, 2, cs);
  CHECK(p.degree() == 0);
  CHECK(MatrixPolynomial(2, 2).degree() == -1);
  CHECK(MatrixPolynomial(2, 2).is_zero());
}

TEST_CASE("arithmetic agrees with pointwise arithmetic") {
  std::mt19937_64 rng(13);
  MatrixPolynomial p = battery::rand_poly(rng, 2, 3);
  MatrixPolynomial q = battery::rand_poly(rng, 2, 4);
  for (double t : {-0.7, 0.3, 1.9}) {
    CHECK(((p + q).eval(t) - (p.eval(t) + q.eval(t))).norm() <= 1e-12);
    CHECK(((p - q).eval(t) - (p.eval(t) - q.eval(t))).norm() <= 1e-12);
    CHECK(((p * q).eval(t) - p.eval(t) * q.eval(t)).norm() <= 1e-11);
    CHECK(((2.5 * p).eval(t) - 2.5 * p.eval(t)).norm() <= 1e-12);
    CHECK((p.transpose().eval(t) - p.eval(t).transpose()).norm() == 0.0);
  }
}

TEST_CASE("symmetry detection") {
  std::mt19937_64 rng(14);
  MatrixPolynomial p = battery::rand_poly(rng, 3, 3);
  MatrixPolynomial s = battery::symmetrized(p);
  CHECK(s.is_symmetric());
  CHECK(!(s + p).is_symmetric());
  CHECK(MatrixPolynomial::identity(4).is_symmetric());
}

TEST_CASE("binomial coefficients") {
  CHECK(binomial(0, 0) == 1.0);
  CHECK(binomial(5, 2) == 10.0);
  CHECK(binomial(10, 10) == 1.0);
  double row = 0.0;
  for (int j = 0; j <= 12; ++j) row += binomial(12, j);
  CHECK(row == 4096.0);
}

TEST_CASE("polynomial jets match analytic derivatives") {
  // p(t) = 3 t^4 - 2 t + 5 entrywise checks through order 5
  MatrixPolynomial p = MatrixPolynomial::scalar({5.0, -2.0, 0.0, 0.0, 3.0});
  double t = 0.8;
  MatrixJet jet = poly_jet(p, t, 5);
  REQUIRE(jet.size() == 6);
  CHECK(jet[0](0, 0) == doctest::Approx(3 * std::pow(t, 4) - 2 * t + 5).epsilon(1e-14));
  CHECK(jet[1](0, 0) == doctest::Approx(12 * std::pow(t, 3) - 2).epsilon(1e-14));
  CHECK(jet[2](0, 0) == doctest::Approx(36 * t * t).epsilon(1e-14));
  CHECK(jet[3](0, 0) == doctest::Approx(72 * t).epsilon(1e-14));
  CHECK(jet[4](0, 0) == 72.0);
  CHECK(jet[5](0, 0) == 0.0);
}

TEST_CASE("jet product obeys the Leibniz rule") {
  std::mt19937_64 rng(15);
  MatrixPolynomial p = battery::rand_poly(rng, 2, 3);
  MatrixPolynomial q = battery::rand_poly(rng, 2, 3);
  double t = 0.4;
  MatrixJet prod = jet_product(poly_jet(p, t, 4), poly_jet(q, t, 4));
  MatrixJet direct = poly_jet(p * q, t, 4);
  REQUIRE(prod.size() == 5);
  for (int m = 0; m <= 4; ++m)
    CHECK((prod[static_cast<std::size_t>(m)] -
           direct[static_cast<std::size_t>(m)])
              .norm() <= 1e-10);
}

TEST_CASE("inverse jets invert to the constant identity") {
  std::mt19937_64 rng(16);
  MatrixPolynomial g = battery::rand_poly(rng, 3, 2);
  MatrixPolynomial m = g.transpose() * g + MatrixPolynomial::identity(3);
  double t = 0.6;
  MatrixJet mj = poly_jet(m, t, 4);
  MatrixJet inv = jet_inverse(mj);
  MatrixJet prod = jet_product(inv, mj);
  CHECK((prod[0] - Eigen::MatrixXd::Identity(3, 3)).norm() <= 1e-12);
  for (std::size_t level = 1; level < prod.size(); ++level)
    CHECK(prod[level].norm() <= 1e-9);
}

TEST_CASE("gauss-legendre is exact through degree 2n-1") {
  for (int n : {1, 2, 4, 8, 16}) {
    for (int d = 0; d <= 2 * n - 1; ++d) {
      const QuadratureRule& rule = gauss_legendre(n);
      double got = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        got += rule.weights[i] * std::pow(rule.nodes[i], d);
      double want = d % 2 == 1 ? 0.0 : 2.0 / (d + 1);
      CHECK(std::abs(got - want) <= 1e-13);
    }
  }
}

TEST_CASE("integrate handles shifted intervals and panels") {
  auto f = [](double t) { return t * t * t - 2.0 * t + 1.0; };
  // antiderivative t^4/4 - t^2 + t on [0.5, 2.5]
  double want = (std::pow(2.5, 4) / 4 - 2.5 * 2.5 + 2.5) -
                (std::pow(0.5, 4) / 4 - 0.5 * 0.5 + 0.5);
  CHECK(std::abs(integrate(f, 0.5, 2.5, 4) - want) <= 1e-12);
  CHECK(std::abs(integrate(f, 0.5, 2.5, 2, 8) - want) <= 1e-12);
  CHECK(std::abs(integrate([](double t) { return std::sin(t); }, 0.0, 1.0, 16) -
                 (1.0 - std::cos(1.0))) <= 1e-14);
}

TEST_CASE("nodes_for_degree covers the requested degree") {
  for (int d = 0; d <= 40; ++d) {
    int n = nodes_for_degree(d);
    CHECK(2 * n - 1 >= d);
  }
}

TEST_CASE("rule cache returns a stable reference") {
  const QuadratureRule& a = gauss_legendre(8);
  const QuadratureRule& b = gauss_legendre(8);
  CHECK(&a == &b);
  CHECK(a.nodes.size() == 8);
}

}  // TEST_SUITE
