#pragma once

// Shared generators for the randomized suites. Everything is seeded and the
// raw-draw helper avoids std::uniform_real_distribution so the batteries are
// bit-reproducible across standard libraries.

#include "varjacobi/conjugacy.hpp"
#include "varjacobi/problem.hpp"
#include "varjacobi/test_field.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace battery {

using namespace varjacobi;

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double pm1(std::mt19937_64& rng) { return 2.0 * uniform01(rng) - 1.0; }

inline Eigen::MatrixXd rand_mat(std::mt19937_64& rng, int n) {
  Eigen::MatrixXd m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = pm1(rng);
  return m;
}

inline MatrixPolynomial rand_poly(std::mt19937_64& rng, int n, int deg) {
  std::vector<Eigen::MatrixXd> cs;
  cs.reserve(static_cast<std::size_t>(deg) + 1);
  for (int d = 0; d <= deg; ++d) cs.push_back(rand_mat(rng, n));
  return MatrixPolynomial(n, n, cs);
}

inline MatrixPolynomial symmetrized(const MatrixPolynomial& p) {
  return 0.5 * (p + p.transpose());
}

// 2 (G(t)^T G(t) + I) with deg(G) <= 2: symmetric, and >= 2I on the whole line,
// so the strong Legendre condition holds with a unit margin.
inline MatrixPolynomial spd_top(std::mt19937_64& rng, int n) {
  MatrixPolynomial g = rand_poly(rng, n, 2);
  MatrixPolynomial m = g.transpose() * g + MatrixPolynomial::identity(n);
  return 2.0 * m;
}

inline VariationalProblem random_band(std::mt19937_64& rng, int k, int n,
                                      double a = 0.0, double b = 1.0) {
  std::vector<MatrixPolynomial> diag;
  std::vector<MatrixPolynomial> super;
  for (int i = 0; i < k; ++i) diag.push_back(symmetrized(rand_poly(rng, n, 4)));
  diag.push_back(spd_top(rng, n));
  for (int i = 0; i < k; ++i) super.push_back(rand_poly(rng, n, 4));
  return VariationalProblem(k, n, a, b, diag, super);
}

// 20 problems cycling k in 1..3 and n in 1..3, the shape the acceptance
// batteries call for.
inline std::vector<VariationalProblem> standard_battery(std::uint64_t seed = 7,
                                                        int count = 20) {
  std::mt19937_64 rng(seed);
  std::vector<VariationalProblem> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    int k = 1 + (i % 3);
    int n = 1 + ((i / 3) % 3);
    out.push_back(random_band(rng, k, n));
  }
  return out;
}

// n = 1 problems, optionally rejection-resampled until the pipeline certifies
// them (the integrated scalar identity needs a zero-free sub-Wronskian).
inline std::vector<VariationalProblem> scalar_battery(std::uint64_t seed = 7,
                                                      int count = 20,
                                                      bool certified_only = false) {
  std::mt19937_64 rng(seed);
  std::vector<VariationalProblem> out;
  int i = 0;
  while (static_cast<int>(out.size()) < count) {
    int k = 1 + (i++ % 3);
    VariationalProblem prob = random_band(rng, k, 1);
    if (certified_only &&
        positivity_verdict(prob).verdict != Verdict::PositiveDefiniteCertified)
      continue;
    out.push_back(std::move(prob));
  }
  return out;
}

// Q = int hdot^2 - h^2 on [0, b]; Jacobi equation hddot = -h, conjugate
// points at multiples of pi.
inline VariationalProblem harmonic(double b = 1.0, double m11 = 2.0) {
  std::vector<MatrixPolynomial> diag{MatrixPolynomial::scalar({-m11}),
                                     MatrixPolynomial::scalar({m11})};
  std::vector<MatrixPolynomial> super{MatrixPolynomial(1, 1)};
  return VariationalProblem(1, 1, 0.0, b, diag, super);
}

// Q = (m22/2) int hddot^2 on [0, b]; positive definite on any interval.
inline VariationalProblem quartic(double m22 = 2.0, double b = 1.0) {
  std::vector<MatrixPolynomial> diag{MatrixPolynomial(1, 1),
                                     MatrixPolynomial(1, 1),
                                     MatrixPolynomial::scalar({m22})};
  std::vector<MatrixPolynomial> super{MatrixPolynomial(1, 1),
                                      MatrixPolynomial(1, 1)};
  return VariationalProblem(2, 1, 0.0, b, diag, super);
}

// Raw coefficient set with off-band couplings for the reduction tests:
// all 0 <= i <= j <= k blocks populated, diagonals symmetric, top block SPD.
inline RawCoefficients random_raw(std::mt19937_64& rng, int k, int n,
                                  double a = 0.0, double b = 1.0) {
  RawCoefficients raw;
  raw.order_k = k;
  raw.dim_n = n;
  raw.a = a;
  raw.b = b;
  for (int i = 0; i <= k; ++i) {
    for (int j = i; j <= k; ++j) {
      if (i == k && j == k) {
        raw.blocks.emplace(std::make_pair(i, j), spd_top(rng, n));
      } else if (i == j) {
        raw.blocks.emplace(std::make_pair(i, j),
                           symmetrized(rand_poly(rng, n, 4)));
      } else {
        raw.blocks.emplace(std::make_pair(i, j), rand_poly(rng, n, 4));
      }
    }
  }
  return raw;
}

}  // namespace battery
