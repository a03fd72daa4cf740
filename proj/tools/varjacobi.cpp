#include "varjacobi/problem_io.hpp"
#include "varjacobi/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

namespace {

using namespace varjacobi;

struct CliArgs {
  std::string file;
  std::string out_path;
  std::string csv_prefix;
  std::string inject;
  AnalysisOptions opts;
};

void add_common(CLI::App* cmd, CliArgs& args) {
  cmd->add_option("problem", args.file, "problem JSON file")->required();
  cmd->add_option("--out", args.out_path, "write the report here instead of stdout");
  cmd->add_option("--csv", args.csv_prefix,
                  "write <prefix>_wronskian.csv and <prefix>_profile.csv");
  cmd->add_option("--step", args.opts.step,
                  "integration step (default (b-a)/4096)");
  cmd->add_option("--delta", args.opts.delta,
                  "scan exclusion window after a (default max(10 step, 1e-3 (b-a)))");
  cmd->add_option("--seed", args.opts.seed, "seed for the residual batteries");
  cmd->add_option("--rank-tol", args.opts.rank_tol, "relative rank tolerance");
  cmd->add_option("--basis", args.opts.basis, "oracle basis size per component");
  cmd->add_option("--refine-tol", args.opts.refine_tol,
                  "zero refinement tolerance");
  cmd->add_option("--tangential-threshold", args.opts.tangential_threshold,
                  "relative dip threshold for tangential zeros");
  cmd->add_option("--grid-points", args.opts.grid_points,
                  "validation grid resolution");
  cmd->add_option("--profile-samples", args.opts.profile_samples,
                  "rank/flag profile sample count");
  // Test hook: perturb stored frame INDEX by MAG before analysis.
  cmd->add_option("--inject-frame-error", args.inject, "INDEX:MAG")->group("");
}

void parse_inject(CliArgs& args) {
  if (args.inject.empty()) return;
  auto colon = args.inject.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("--inject-frame-error expects INDEX:MAG");
  args.opts.inject_index = std::stoull(args.inject.substr(0, colon));
  args.opts.inject_magnitude = std::stod(args.inject.substr(colon + 1));
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
}

int run_analyze(const VariationalProblem& prob, const CliArgs& args) {
  AnalysisReport rep = run_analysis(prob, args.opts);
  std::string body = report_to_json(rep);
  if (args.out_path.empty())
    std::cout << body;
  else
    write_text(args.out_path, body);
  if (!args.csv_prefix.empty()) {
    write_wronskian_csv(args.csv_prefix + "_wronskian.csv", rep);
    write_profile_csv(args.csv_prefix + "_profile.csv", rep);
  }
  return verdict_exit_code(rep.verdict);
}

int run_verify(const VariationalProblem& prob, const CliArgs& args) {
  VerifyReport rep = run_verification(prob, args.opts);
  char line[160];
  for (const auto& c : rep.checks) {
    std::snprintf(line, sizeof line, "[%s] %-28s value=%-12.4g bound=%g\n",
                  c.pass ? "ok" : "FAIL", c.name.c_str(), c.value, c.bound);
    std::cout << line;
  }
  std::cout << (rep.all_pass ? "all checks passed\n" : "CHECKS FAILED\n");
  if (!args.out_path.empty()) {
    nlohmann::json doc;
    doc["all_pass"] = rep.all_pass;
    auto checks = nlohmann::json::array();
    for (const auto& c : rep.checks) {
      nlohmann::json j;
      j["name"] = c.name;
      j["pass"] = c.pass;
      j["value"] = c.value;
      j["bound"] = c.bound;
      checks.push_back(std::move(j));
    }
    doc["checks"] = std::move(checks);
    doc["seed"] = args.opts.seed;
    write_text(args.out_path, doc.dump(2) + "\n");
  }
  return rep.all_pass ? 0 : 1;
}

int run_rank(const VariationalProblem& prob, const CliArgs& args) {
  HamiltonianSystem sys(prob);
  double step = args.opts.step > 0.0 ? args.opts.step
                                     : (prob.b() - prob.a()) / 4096.0;
  FrameTrajectory traj = integrate_frame(sys, step);
  if (args.opts.inject_magnitude != 0.0)
    traj.corrupt_frame(args.opts.inject_index, args.opts.inject_magnitude);
  AnalysisReport rep;
  rep.profile = rank_profile(traj, args.opts.profile_samples, args.opts.rank_tol);
  write_profile_csv(args.out_path.empty() ? "/dev/stdout" : args.out_path, rep);
  if (!args.csv_prefix.empty())
    write_profile_csv(args.csv_prefix + "_profile.csv", rep);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conjugate-point detection and positivity certification for "
               "k-th order variational problems"};
  app.require_subcommand(1);
  CliArgs args;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "full pipeline: conjugate points, residuals, verdict");
  CLI::App* verify = app.add_subcommand(
      "verify", "identity, drift, rank, and flag consistency battery");
  CLI::App* rank =
      app.add_subcommand("rank", "rank/flag profile along the interval (CSV)");
  add_common(analyze, args);
  add_common(verify, args);
  add_common(rank, args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    parse_inject(args);
    RawCoefficients raw = load_problem_file(args.file);
    VariationalProblem prob = reduce_to_band(raw);
    ValidationReport val = validate_problem(prob, args.opts.grid_points);
    if (!val.pass) {
      std::cerr << "validation failed: " << val.message << "\n";
      return 3;
    }
    if (analyze->parsed()) return run_analyze(prob, args);
    if (verify->parsed()) return run_verify(prob, args);
    return run_rank(prob, args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
