#pragma once

#include "varjacobi/frame_trajectory.hpp"
#include "varjacobi/zero_scan.hpp"

#include <string>
#include <vector>

namespace varjacobi {

enum class Verdict {
  PositiveDefiniteCertified,
  ConjugatePointFound,
  Inconclusive,
};

std::string verdict_string(Verdict v);
int verdict_exit_code(Verdict v);

struct ConjugatePoint {
  double t;
  bool sign_change;  // false: tangential candidate
  std::string type() const { return sign_change ? "sign-change" : "tangential"; }
};

struct ConjugacyOptions {
  double delta = 0.0;  // 0: max(10 * step, 1e-3 * (b - a))
  double refine_tol = 1e-9;
  double tangential_threshold = 1e-8;
};

struct ConjugacyResult {
  std::vector<double> sample_times;
  std::vector<double> wronskian;
  std::vector<ConjugatePoint> conjugate_points;
  double delta = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  // States the one-sided nature of the test: a conjugate point blocks this
  // certificate but does not by itself certify non-positivity.
  std::string note;
};

// det Y(t) of the vertical frame; vanishes identically to high order at a,
// and at conjugate points of a.
double subwronskian(const FrameTrajectory& traj, std::size_t t_index);
double subwronskian_at(const FrameTrajectory& traj, double t);

// Scans (a + delta, b] for zeros of the sub-Wronskian. Sign changes are
// certain conjugate points; tangential candidates leave the result
// inconclusive rather than certified.
ConjugacyResult find_conjugate_points(const FrameTrajectory& traj,
                                      const ConjugacyOptions& opts = {});

// Full pipeline: validate, assemble, integrate (default step (b-a)/4096),
// scan. Positivity certification is sufficiency-only.
ConjugacyResult positivity_verdict(const VariationalProblem& prob,
                                   double step = 0.0,
                                   const ConjugacyOptions& opts = {});

}  // namespace varjacobi
