#pragma once

#include "varjacobi/conjugacy.hpp"
#include "varjacobi/flags.hpp"
#include "varjacobi/frame_trajectory.hpp"
#include "varjacobi/problem.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace varjacobi {

struct AnalysisOptions {
  double step = 0.0;  // 0 = auto: (b - a) / 4096
  double delta = 0.0;
  double refine_tol = 1e-9;
  double tangential_threshold = 1e-8;
  double rank_tol = 1e-8;
  int basis = 12;
  int grid_points = 257;
  std::uint64_t seed = 1;
  int profile_samples = 33;
  // Fault-injection hook: perturb one stored frame before analysis
  // (index, magnitude); disabled when magnitude == 0.
  std::size_t inject_index = 0;
  double inject_magnitude = 0.0;
};

struct ResidualReport {
  double infinitesimally_symplectic = 0.0;
  double symplectic_drift = 0.0;
  double yz_commutator = 0.0;
  double riccati_asymmetry = 0.0;
  // Normalized pointwise identity residual |lhs - rhs| / (1 + |lhs|) over a
  // seeded battery of fields and sample times.
  double picone_max = 0.0;
  double picone_mean = 0.0;
};

struct RankFlagSample {
  double t = 0.0;
  int curve_rank = 0;
  bool fanning = false;
  double fanning_condition = 0.0;
  std::vector<SymplecticClass> flags;
  int vertical_dim = 0;
};

struct AnalysisReport {
  int order_k = 0;
  int dim_n = 0;
  double a = 0.0;
  double b = 0.0;
  double step = 0.0;
  std::uint64_t seed = 1;
  ValidationReport validation;
  Verdict verdict = Verdict::Inconclusive;
  std::string note;
  double delta = 0.0;
  std::vector<ConjugatePoint> conjugate_points;
  ResidualReport residuals;
  double min_eigenvalue_estimate = 0.0;  // Rayleigh-Ritz, basis-size dependent
  std::vector<RankFlagSample> profile;
  std::vector<double> sample_times;      // CSV sink, not serialized to JSON
  std::vector<double> wronskian_values;  // CSV sink, not serialized to JSON
};

AnalysisReport run_analysis(const VariationalProblem& prob,
                            const AnalysisOptions& opts = {});

// Same, returning the trajectory for callers that also want CSV dumps
// without integrating twice.
std::pair<AnalysisReport, FrameTrajectory> run_analysis_full(
    const VariationalProblem& prob, const AnalysisOptions& opts = {});

// Canonical JSON, sorted keys, %.17g doubles (round-trip stable).
std::string report_to_json(const AnalysisReport& report);

struct VerifyCheck {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double bound = 0.0;
};

struct VerifyReport {
  bool all_pass = false;
  std::vector<VerifyCheck> checks;
};

// Internal-consistency battery on one problem: structural residuals,
// convergence ratio, pointwise and integrated identities, rank and flag
// profiles, and (n = 1) agreement with the scalar route.
VerifyReport run_verification(const VariationalProblem& prob,
                              const AnalysisOptions& opts = {});

std::vector<RankFlagSample> rank_profile(const FrameTrajectory& traj,
                                         int samples, double rank_tol);

void write_wronskian_csv(const std::string& path, const AnalysisReport& report);
void write_profile_csv(const std::string& path, const AnalysisReport& report);

}  // namespace varjacobi
