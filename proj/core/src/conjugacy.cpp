#include "varjacobi/conjugacy.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <stdexcept>

namespace varjacobi {

std::string verdict_string(Verdict v) {
  switch (v) {
    case Verdict::PositiveDefiniteCertified:
      return "positive-definite-certified";
    case Verdict::ConjugatePointFound:
      return "conjugate-point-found";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

int verdict_exit_code(Verdict v) {
  switch (v) {
    case Verdict::PositiveDefiniteCertified:
      return 0;
    case Verdict::ConjugatePointFound:
      return 1;
    case Verdict::Inconclusive:
      return 2;
  }
  return 2;
}

double subwronskian(const FrameTrajectory& traj, std::size_t t_index) {
  auto [y, z] = vertical_frame(traj, t_index);
  (void)z;
  return Eigen::PartialPivLU<Eigen::MatrixXd>(y).determinant();
}

double subwronskian_at(const FrameTrajectory& traj, double t) {
  auto [y, z] = vertical_blocks(traj.frame_at(t));
  (void)z;
  return Eigen::PartialPivLU<Eigen::MatrixXd>(y).determinant();
}

ConjugacyResult find_conjugate_points(const FrameTrajectory& traj,
                                      const ConjugacyOptions& opts) {
  ConjugacyResult res;
  const double a = traj.a();
  const double b = traj.b();
  res.delta = opts.delta > 0.0
                  ? opts.delta
                  : std::max(10.0 * traj.step(), 1e-3 * (b - a));

  res.sample_times = traj.grid();
  res.wronskian.reserve(res.sample_times.size());
  for (std::size_t i = 0; i < res.sample_times.size(); ++i) {
    res.wronskian.push_back(subwronskian(traj, i));
  }

  ZeroScanOptions scan_opts;
  scan_opts.refine_tol = opts.refine_tol;
  scan_opts.tangential_threshold = opts.tangential_threshold;
  auto zeros = scan_zeros(res.sample_times, res.wronskian, a + res.delta, b,
                          scan_opts,
                          [&](double t) { return subwronskian_at(traj, t); });

  bool any_sign_change = false;
  bool any_tangential = false;
  for (const auto& z : zeros) {
    res.conjugate_points.push_back({z.t, z.sign_change});
    any_sign_change = any_sign_change || z.sign_change;
    any_tangential = any_tangential || !z.sign_change;
  }

  if (any_sign_change) {
    res.verdict = Verdict::ConjugatePointFound;
    res.note =
        "conjugate point(s) detected; positivity certification is blocked. "
        "The criterion is sufficiency-only: a conjugate point does not by "
        "itself certify non-positivity.";
  } else if (any_tangential) {
    res.verdict = Verdict::Inconclusive;
    res.note =
        "near-zero of the sub-Wronskian without a sign change; unresolved at "
        "this step size, so no certificate is issued.";
  } else {
    res.verdict = Verdict::PositiveDefiniteCertified;
    res.note =
        "no conjugate points found in (a+delta, b]; the functional is "
        "certified positive definite (sufficiency criterion).";
  }
  return res;
}

ConjugacyResult positivity_verdict(const VariationalProblem& prob, double step,
                                   const ConjugacyOptions& opts) {
  ValidationReport val = validate_problem(prob);
  if (!val.pass) throw std::invalid_argument(val.message);
  if (step <= 0.0) step = (prob.b() - prob.a()) / 4096.0;
  HamiltonianSystem sys = build_blocks(prob);
  FrameTrajectory traj = integrate_frame(sys, step);
  return find_conjugate_points(traj, opts);
}

}  // namespace varjacobi
