#include "varjacobi/eswaran.hpp"
#include "varjacobi/picone.hpp"
#include "varjacobi/report.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace varjacobi;

namespace {

VariationalProblem harmonic(double b) {
  return VariationalProblem(
      1, 1, 0.0, b,
      {MatrixPolynomial::scalar({-2.0}), MatrixPolynomial::scalar({2.0})},
      {MatrixPolynomial(1, 1)});
}

VariationalProblem coupled(int k, int n) {
  std::mt19937_64 rng(12345);
  auto rand_poly = [&](int deg, bool sym) {
    std::vector<Eigen::MatrixXd> coeffs;
    for (int d = 0; d <= deg; ++d) {
      Eigen::MatrixXd m = Eigen::MatrixXd::NullaryExpr(n, n, [&](Eigen::Index) {
        return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
      });
      coeffs.push_back(sym ? Eigen::MatrixXd(0.5 * (m + m.transpose())) : m);
    }
    return MatrixPolynomial(n, n, std::move(coeffs));
  };
  std::vector<MatrixPolynomial> diag;
  for (int i = 0; i < k; ++i) diag.push_back(rand_poly(3, true));
  MatrixPolynomial g = rand_poly(2, false);
  diag.push_back(g.transpose() * g + 2.0 * MatrixPolynomial::identity(n));
  std::vector<MatrixPolynomial> super;
  for (int i = 0; i < k; ++i) super.push_back(rand_poly(3, false));
  return VariationalProblem(k, n, 0.0, 1.0, std::move(diag), std::move(super));
}

void bm_frame_integration(benchmark::State& state) {
  VariationalProblem prob =
      coupled(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  HamiltonianSystem sys(prob);
  for (auto _ : state) {
    FrameTrajectory traj = integrate_frame(sys, 1.0 / 4096);
    benchmark::DoNotOptimize(traj.frames().back());
  }
}
BENCHMARK(bm_frame_integration)->Args({1, 1})->Args({2, 2})->Args({3, 3});

void bm_conjugacy_scan(benchmark::State& state) {
  VariationalProblem prob = harmonic(10.0);
  for (auto _ : state) {
    ConjugacyResult res = positivity_verdict(prob, 1e-3);
    benchmark::DoNotOptimize(res.conjugate_points.size());
  }
}
BENCHMARK(bm_conjugacy_scan);

void bm_picone_functional(benchmark::State& state) {
  VariationalProblem prob = coupled(2, 2);
  HamiltonianSystem sys(prob);
  FrameTrajectory traj = integrate_frame(sys, 1.0 / 4096);
  ConjugacyResult conj = find_conjugate_points(traj);
  if (!conj.conjugate_points.empty()) {
    state.SkipWithError("benchmark problem unexpectedly has conjugate points");
    return;
  }
  std::mt19937_64 rng(7);
  TestField field = TestField::random(rng, 2, 0.0, 1.0, 2, 3);
  for (auto _ : state) {
    PiconeFunctional q = functional_via_picone(prob, traj, field, conj);
    benchmark::DoNotOptimize(q.value);
  }
}
BENCHMARK(bm_picone_functional);

void bm_scalar_route(benchmark::State& state) {
  ScalarProblem1D sp = diagonalize_1d(harmonic(10.0));
  for (auto _ : state) {
    ScalarSolutionSet sols = scalar_vertical_solutions(sp, 10.0 / 4096);
    ConjugacyResult res = scalar_conjugate_points(sols);
    benchmark::DoNotOptimize(res.conjugate_points.size());
  }
}
BENCHMARK(bm_scalar_route);

void bm_rayleigh_oracle(benchmark::State& state) {
  VariationalProblem prob = coupled(2, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        discrete_hessian_min_eig(prob, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(bm_rayleigh_oracle)->Arg(8)->Arg(12)->Arg(16);

void bm_full_analysis(benchmark::State& state) {
  VariationalProblem prob = coupled(2, 2);
  for (auto _ : state) {
    AnalysisReport rep = run_analysis(prob);
    benchmark::DoNotOptimize(rep.verdict);
  }
}
BENCHMARK(bm_full_analysis);

}  // namespace

BENCHMARK_MAIN();
