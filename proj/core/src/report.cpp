#include "varjacobi/report.hpp"

#include "varjacobi/eswaran.hpp"
#include "varjacobi/hamiltonian.hpp"
#include "varjacobi/picone.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace varjacobi {

namespace {

using nlohmann::json;

double auto_step(const VariationalProblem& prob, double step) {
  return step > 0.0 ? step : (prob.b() - prob.a()) / 4096.0;
}

ConjugacyOptions conjugacy_options(const AnalysisOptions& opts) {
  ConjugacyOptions copts;
  copts.delta = opts.delta;
  copts.refine_tol = opts.refine_tol;
  copts.tangential_threshold = opts.tangential_threshold;
  return copts;
}

void append_note(std::string& note, const std::string& extra) {
  if (!note.empty()) note += "; ";
  note += extra;
}

struct PiconeBattery {
  double max = 0.0;
  double mean = 0.0;
  double min_integrand = 0.0;
  int evaluated = 0;
};

// Pointwise identity residuals over random admissible fields at sample times
// clear of the near-a window and of ill-conditioned Y (those are skipped, as
// the identity's precondition requires).
PiconeBattery picone_battery(const VariationalProblem& prob,
                             const FrameTrajectory& traj, double delta,
                             std::mt19937_64& rng, int n_fields, int n_times) {
  PiconeBattery out;
  const double a = prob.a();
  const double b = prob.b();
  const double lo = std::max(delta, 0.02 * (b - a));
  const HamiltonianSystem& sys = traj.system();
  double sum = 0.0;
  for (int f = 0; f < n_fields; ++f) {
    TestField field = TestField::random(rng, prob.order(), a, b, prob.dim(), 3);
    for (int j = 0; j < n_times; ++j) {
      double t = a + lo + (j + 1) * (b - a - lo) / n_times;
      auto idx = static_cast<std::size_t>(std::llround((t - a) / traj.step()));
      idx = std::min(idx, traj.steps());
      PiconePointResult r;
      try {
        r = picone_lhs_rhs(prob, traj, field, idx);
      } catch (const std::domain_error&) {
        continue;
      }
      double res = std::abs(r.lhs - r.rhs) / (1.0 + std::abs(r.lhs));
      out.max = std::max(out.max, res);
      sum += res;
      ++out.evaluated;

      double tg = traj.grid()[idx];
      auto [yv, zv] = vertical_frame(traj, idx);
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(yv);
      auto [yhat, zhat] =
          zeroing_transform(prob, field.jet(tg, prob.order()), tg);
      Eigen::VectorXd w = zhat - zv * lu.solve(yhat);
      out.min_integrand = std::min(out.min_integrand, w.dot(sys.B(tg) * w));
    }
  }
  if (out.evaluated > 0) out.mean = sum / out.evaluated;
  return out;
}

double frame_norm_scale(const FrameTrajectory& traj) {
  double scale = 1.0;
  for (const auto& f : traj.frames())
    scale = std::max(scale, 1.0 + f.squaredNorm());
  return scale;
}

bool residual_gates_pass(const ResidualReport& r, double norm_scale) {
  return r.infinitesimally_symplectic <= 1e-12 &&
         r.symplectic_drift <= 1e-9 * norm_scale && r.yz_commutator <= 1e-9 &&
         r.riccati_asymmetry <= 1e-8 && r.picone_max <= 1e-7;
}

std::string fmt_double(double d) {
  if (!std::isfinite(d)) return "null";
  if (d == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  return buf;
}

void dump_json(const json& v, std::string& out, int depth) {
  const std::string pad(2 * static_cast<std::size_t>(depth), ' ');
  const std::string pad_in(2 * static_cast<std::size_t>(depth + 1), ' ');
  switch (v.type()) {
    case json::value_t::number_float:
      out += fmt_double(v.get<double>());
      break;
    case json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        break;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        out += pad_in;
        dump_json(v[i], out, depth + 1);
        out += i + 1 < v.size() ? ",\n" : "\n";
      }
      out += pad + "]";
      break;
    }
    case json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      std::size_t i = 0;
      for (const auto& item : v.items()) {
        out += pad_in + json(item.key()).dump() + ": ";
        dump_json(item.value(), out, depth + 1);
        out += ++i < v.size() ? ",\n" : "\n";
      }
      out += pad + "}";
      break;
    }
    default:
      out += v.dump();
      break;
  }
}

json validation_to_json(const ValidationReport& val) {
  json j;
  j["pass"] = val.pass;
  j["min_eigenvalue"] = val.min_eigenvalue;
  j["first_failing_t"] = val.first_failing_t;  // NaN serializes to null
  j["message"] = val.message;
  return j;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

SymplecticClass expected_flag(int order_i, int k) {
  if (order_i < k - 1) return SymplecticClass::Isotropic;
  if (order_i == k - 1) return SymplecticClass::Lagrangian;
  if (order_i < 2 * k - 1) return SymplecticClass::Coisotropic;
  return SymplecticClass::Full;
}

}  // namespace

std::vector<RankFlagSample> rank_profile(const FrameTrajectory& traj,
                                         int samples, double rank_tol) {
  std::vector<RankFlagSample> out;
  if (samples < 1) return out;
  const int k = traj.system().problem().order();
  const auto n = traj.system().problem().dim();
  const double a = traj.a();
  const double b = traj.b();
  out.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    double t = samples == 1 ? b : a + (b - a) * i / (samples - 1);
    FrameJetStack stack = frame_jet_at(traj, t, 2 * k - 1);
    RankFlagSample s;
    s.t = t;
    s.curve_rank = curve_rank(stack, rank_tol);
    FanningResult fan = fanning_check(stack);
    s.fanning = fan.is_fanning;
    s.fanning_condition = fan.condition_number;
    s.flags = flag_profile(stack, rank_tol);
    s.vertical_dim = vertical_intersection_dim(stack, rank_tol);
    (void)n;
    out.push_back(std::move(s));
  }
  return out;
}

std::pair<AnalysisReport, FrameTrajectory> run_analysis_full(
    const VariationalProblem& prob, const AnalysisOptions& opts) {
  AnalysisReport rep;
  rep.order_k = prob.order();
  rep.dim_n = static_cast<int>(prob.dim());
  rep.a = prob.a();
  rep.b = prob.b();
  rep.seed = opts.seed;
  rep.validation = validate_problem(prob, opts.grid_points);
  if (!rep.validation.pass)
    throw std::invalid_argument("problem is not strongly Legendre-positive: " +
                                rep.validation.message);

  HamiltonianSystem sys(prob);
  FrameTrajectory traj = integrate_frame(sys, auto_step(prob, opts.step));
  rep.step = traj.step();
  if (opts.inject_magnitude != 0.0)
    traj.corrupt_frame(opts.inject_index, opts.inject_magnitude);

  ConjugacyResult conj = find_conjugate_points(traj, conjugacy_options(opts));
  rep.delta = conj.delta;
  rep.conjugate_points = conj.conjugate_points;
  rep.verdict = conj.verdict;
  rep.note = conj.note;
  rep.sample_times = conj.sample_times;
  rep.wronskian_values = conj.wronskian;

  rep.residuals.infinitesimally_symplectic =
      check_infinitesimally_symplectic(sys, opts.grid_points);
  rep.residuals.symplectic_drift = symplectic_drift(traj);
  SymmetryResiduals symr = frame_symmetry_residuals(traj);
  rep.residuals.yz_commutator = symr.yz_commutator;
  rep.residuals.riccati_asymmetry = symr.riccati_asymmetry;
  std::mt19937_64 rng(opts.seed);
  PiconeBattery battery = picone_battery(prob, traj, conj.delta, rng, 5, 50);
  rep.residuals.picone_max = battery.max;
  rep.residuals.picone_mean = battery.mean;

  rep.min_eigenvalue_estimate = discrete_hessian_min_eig(prob, opts.basis);
  rep.profile = rank_profile(traj, opts.profile_samples, opts.rank_tol);

  if (prob.diagonals_were_symmetrized())
    append_note(rep.note, "non-symmetric diagonal blocks were symmetrized");
  if (rep.verdict == Verdict::PositiveDefiniteCertified &&
      !residual_gates_pass(rep.residuals, frame_norm_scale(traj))) {
    rep.verdict = Verdict::Inconclusive;
    append_note(rep.note,
                "structural residuals exceed tolerance; certification "
                "withheld");
  }
  return {std::move(rep), std::move(traj)};
}

AnalysisReport run_analysis(const VariationalProblem& prob,
                            const AnalysisOptions& opts) {
  return run_analysis_full(prob, opts).first;
}

std::string report_to_json(const AnalysisReport& rep) {
  json root;
  json problem;
  problem["order_k"] = rep.order_k;
  problem["dim_n"] = rep.dim_n;
  problem["interval"] = json::array({rep.a, rep.b});
  problem["validation"] = validation_to_json(rep.validation);
  root["problem"] = std::move(problem);

  json conj;
  json points = json::array();
  for (const auto& cp : rep.conjugate_points) {
    json p;
    p["t"] = cp.t;
    p["type"] = cp.type();
    points.push_back(std::move(p));
  }
  conj["conjugate_points"] = std::move(points);
  conj["delta"] = rep.delta;
  conj["verdict"] = verdict_string(rep.verdict);
  conj["note"] = rep.note;
  root["conjugacy"] = std::move(conj);

  json ranks = json::array();
  json flags = json::array();
  for (const auto& s : rep.profile) {
    json r;
    r["t"] = s.t;
    r["rank"] = s.curve_rank;
    ranks.push_back(std::move(r));
    json f;
    f["t"] = s.t;
    json names = json::array();
    for (SymplecticClass c : s.flags)
      names.push_back(symplectic_class_string(c));
    f["flags"] = std::move(names);
    f["vertical_dim"] = s.vertical_dim;
    f["fanning"] = s.fanning;
    f["fanning_condition"] = s.fanning_condition;
    flags.push_back(std::move(f));
  }
  root["rank_profile"] = std::move(ranks);
  root["flag_profile"] = std::move(flags);

  json res;
  res["infinitesimally_symplectic"] = rep.residuals.infinitesimally_symplectic;
  res["symplectic_drift"] = rep.residuals.symplectic_drift;
  res["yz_commutator"] = rep.residuals.yz_commutator;
  res["riccati_asymmetry"] = rep.residuals.riccati_asymmetry;
  res["picone_max"] = rep.residuals.picone_max;
  res["picone_mean"] = rep.residuals.picone_mean;
  root["residuals"] = std::move(res);

  json oracle;
  oracle["min_eigenvalue"] = rep.min_eigenvalue_estimate;
  root["oracle"] = std::move(oracle);

  root["verdict"] = verdict_string(rep.verdict);

  json options;
  options["step"] = rep.step;
  options["delta"] = rep.delta;
  options["seed"] = rep.seed;
  root["options"] = std::move(options);

  std::string out;
  dump_json(root, out, 0);
  out += "\n";
  return out;
}

VerifyReport run_verification(const VariationalProblem& prob,
                              const AnalysisOptions& opts) {
  VerifyReport out;
  ValidationReport val = validate_problem(prob, opts.grid_points);
  if (!val.pass)
    throw std::invalid_argument("problem is not strongly Legendre-positive: " +
                                val.message);

  const double a = prob.a();
  const double b = prob.b();
  const int k = prob.order();
  const auto n = prob.dim();
  HamiltonianSystem sys(prob);
  FrameTrajectory traj = integrate_frame(sys, auto_step(prob, opts.step));
  if (opts.inject_magnitude != 0.0)
    traj.corrupt_frame(opts.inject_index, opts.inject_magnitude);
  ConjugacyResult conj = find_conjugate_points(traj, conjugacy_options(opts));
  std::mt19937_64 rng(opts.seed);

  auto add = [&out](const char* name, double value, double bound, bool pass) {
    out.checks.push_back(VerifyCheck{name, pass, value, bound});
  };

  double hs = check_infinitesimally_symplectic(sys, opts.grid_points);
  add("infinitesimally-symplectic", hs, 1e-12, hs <= 1e-12);

  double drift = symplectic_drift(traj) / frame_norm_scale(traj);
  add("symplectic-drift", drift, 1e-9, drift <= 1e-9);

  {
    double d128 = symplectic_drift(integrate_frame(sys, (b - a) / 128.0));
    double d256 = symplectic_drift(integrate_frame(sys, (b - a) / 256.0));
    double ratio = d128 > 0.0 ? d256 / d128 : 0.0;
    bool at_floor = d256 < 1e-12;
    add("drift-order", ratio, 0.125,
        at_floor || (ratio >= 1.0 / 32.0 && ratio <= 0.125));
  }

  SymmetryResiduals symr = frame_symmetry_residuals(traj);
  add("vertical-symmetry", symr.yz_commutator, 1e-9,
      symr.yz_commutator <= 1e-9);
  add("riccati-symmetry", symr.riccati_asymmetry, 1e-8,
      symr.riccati_asymmetry <= 1e-8);

  PiconeBattery battery = picone_battery(prob, traj, conj.delta, rng, 5, 50);
  add("picone-pointwise", battery.max, 1e-7, battery.max <= 1e-7);
  double negativity = std::max(0.0, -battery.min_integrand);
  add("picone-nonnegativity", negativity, 1e-10, negativity <= 1e-10);

  {
    double worst = 0.0;
    if (conj.conjugate_points.empty()) {
      for (int f = 0; f < 3; ++f) {
        TestField field = TestField::random(rng, k, a, b, n, 3);
        double direct = functional_value(prob, field);
        PiconeFunctional via = functional_via_picone(prob, traj, field, conj);
        worst = std::max(worst, std::abs(direct - via.value) /
                                    (1.0 + std::abs(direct)));
      }
    }
    add("two-way-functional", worst, 1e-6, worst <= 1e-6);
  }

  {
    int bad = 0;
    for (int i = 0; i < 100; ++i) {
      double t = a + (b - a) * i / 99.0;
      FrameJetStack stack = frame_jet_at(traj, t, k);
      if (curve_rank(stack, opts.rank_tol) != static_cast<int>(n)) ++bad;
    }
    add("curve-rank", bad, 0.0, bad == 0);
  }

  {
    int bad = 0;
    for (int i = 1; i <= 20; ++i) {
      double t = a + (b - a) * i / 20.0;
      FrameJetStack stack = frame_jet_at(traj, t, 2 * k - 1);
      std::vector<SymplecticClass> flags = flag_profile(stack, opts.rank_tol);
      for (int j = 0; j < static_cast<int>(flags.size()); ++j)
        if (flags[j] != expected_flag(j, k)) ++bad;
    }
    add("flag-pattern", bad, 0.0, bad == 0);
  }

  {
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      double t = a + (b - a) * uniform01(rng);
      JetVector jet;
      jet.entries.resize(static_cast<std::size_t>(k) + 1);
      for (auto& e : jet.entries)
        e = Eigen::VectorXd::NullaryExpr(
            n, [&rng](Eigen::Index) { return 2.0 * uniform01(rng) - 1.0; });
      auto [yhat, zhat] = zeroing_transform(prob, jet, t);
      double two_l = 2.0 * lagrangian_value(prob, jet, t);
      double rhs = zhat.dot(sys.B(t) * zhat) + yhat.dot(sys.C(t) * yhat);
      worst =
          std::max(worst, std::abs(two_l - rhs) / (1.0 + std::abs(two_l)));
    }
    add("lagrangian-identity", worst, 1e-10, worst <= 1e-10);
  }

  {
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      TestField field = TestField::random(rng, k, a, b, n, 3);
      double t = a + (b - a) * (trial + 1) / 20.0;
      JetVector jet = field.jet(t, k);
      auto [yhat, zhat] = zeroing_transform(prob, jet, t);
      Eigen::VectorXd ydot(k * n);
      for (int i = 0; i < k; ++i)
        ydot.segment(i * n, n) = jet.entries[static_cast<std::size_t>(i) + 1];
      double r = (ydot - sys.A(t) * yhat - sys.B(t) * zhat).norm() /
                 (1.0 + ydot.norm());
      worst = std::max(worst, r);
    }
    add("zeroing-transport", worst, 1e-9, worst <= 1e-9);
  }

  {
    int min_dim = std::numeric_limits<int>::max();
    bool any = false;
    for (const auto& cp : conj.conjugate_points) {
      if (!cp.sign_change) continue;
      any = true;
      FrameJetStack stack = frame_jet_at(traj, cp.t, k - 1);
      min_dim = std::min(min_dim, vertical_intersection_dim(stack, opts.rank_tol));
    }
    double value = any ? min_dim : 1.0;
    add("vertical-dim-at-conjugate", value, 1.0, value >= 1.0);
  }

  {
    double worst = 0.0;
    bool ok = true;
    if (n == 1) {
      ScalarProblem1D sp = diagonalize_1d(prob);
      ScalarSolutionSet sols =
          scalar_vertical_solutions(sp, auto_step(prob, opts.step));
      ConjugacyResult sconj =
          scalar_conjugate_points(sols, conjugacy_options(opts));
      if (sconj.conjugate_points.size() != conj.conjugate_points.size()) {
        ok = false;
        worst = 1.0;
      } else {
        for (std::size_t i = 0; i < sconj.conjugate_points.size(); ++i)
          worst = std::max(worst, std::abs(sconj.conjugate_points[i].t -
                                           conj.conjugate_points[i].t) /
                                      (b - a));
      }
      if (conj.conjugate_points.empty()) {
        for (int f = 0; f < 3; ++f) {
          TestField field = TestField::random(rng, k, a, b, 1, 3);
          EswaranCheck check = eswaran_integrated_check(sp, field, sols);
          worst = std::max(worst, std::abs(check.lhs - check.rhs) /
                                      (1.0 + std::abs(check.lhs)));
        }
      }
    }
    add("scalar-route-agreement", worst, 1e-6, ok && worst <= 1e-6);
  }

  out.all_pass = std::all_of(out.checks.begin(), out.checks.end(),
                             [](const VerifyCheck& c) { return c.pass; });
  return out;
}

void write_wronskian_csv(const std::string& path,
                         const AnalysisReport& report) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << "t,w\n";
  char buf[96];
  for (std::size_t i = 0; i < report.sample_times.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", report.sample_times[i],
                  report.wronskian_values[i]);
    out << buf;
  }
}

void write_profile_csv(const std::string& path, const AnalysisReport& report) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  std::size_t n_flags =
      report.profile.empty() ? 0 : report.profile.front().flags.size();
  out << "t,rank";
  for (std::size_t j = 0; j < n_flags; ++j) out << ",flag_" << j;
  out << ",vertical_dim,fanning,fanning_condition\n";
  char buf[64];
  for (const auto& s : report.profile) {
    std::snprintf(buf, sizeof buf, "%.17g", s.t);
    out << buf << ',' << s.curve_rank;
    for (SymplecticClass c : s.flags) out << ',' << symplectic_class_string(c);
    out << ',' << s.vertical_dim << ',' << (s.fanning ? 1 : 0);
    std::snprintf(buf, sizeof buf, "%.17g", s.fanning_condition);
    out << ',' << buf << '\n';
  }
}

}  // namespace varjacobi
