#include "varjacobi/eswaran.hpp"

#include "varjacobi/hamiltonian.hpp"
#include "varjacobi/picone.hpp"
#include "varjacobi/quadrature.hpp"
#include "varjacobi/zero_scan.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace varjacobi {

namespace {

// companion matrix of the order-2k scalar equation in the jet coordinates
// (h, h', ..., h^(2k-1)); the top order is solved from
//   sum_l (-1)^l sum_m C(l,m) P_l^(m) h^(2l-m) = 0.
Eigen::MatrixXd companion(const ScalarProblem1D& sp, double t) {
  const int k = sp.order();
  const int dim = 2 * k;
  double lead = sp.p(k).eval(t)(0, 0);
  if (lead == 0.0) {
    std::ostringstream os;
    os << "top coefficient vanishes at t = " << t;
    throw std::domain_error(os.str());
  }
  double lead_sign = (k % 2 == 0) ? lead : -lead;

  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i + 1 < dim; ++i) f(i, i + 1) = 1.0;

  std::vector<double> coef(static_cast<std::size_t>(dim), 0.0);
  for (int l = 0; l <= k; ++l) {
    MatrixJet pl = poly_jet(sp.p(l), t, l);
    double sign = (l % 2 == 0) ? 1.0 : -1.0;
    for (int m = 0; m <= l; ++m) {
      if (l == k && m == 0) continue;  // the solved-for term
      int j = 2 * l - m;
      coef[static_cast<std::size_t>(j)] +=
          sign * binomial(l, m) * pl[static_cast<std::size_t>(m)](0, 0);
    }
  }
  for (int j = 0; j < dim; ++j) {
    f(dim - 1, j) = -coef[static_cast<std::size_t>(j)] / lead_sign;
  }
  return f;
}

Eigen::MatrixXd rk4_step(const ScalarProblem1D& sp, double t, double h,
                         const Eigen::MatrixXd& x) {
  Eigen::MatrixXd f0 = companion(sp, t);
  Eigen::MatrixXd fm = companion(sp, t + 0.5 * h);
  Eigen::MatrixXd f1 = companion(sp, t + h);
  Eigen::MatrixXd k1 = f0 * x;
  Eigen::MatrixXd k2 = fm * (x + (0.5 * h) * k1);
  Eigen::MatrixXd k3 = fm * (x + (0.5 * h) * k2);
  Eigen::MatrixXd k4 = f1 * (x + h * k3);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double top_det(const Eigen::MatrixXd& state, int k) {
  return Eigen::PartialPivLU<Eigen::MatrixXd>(state.topRows(k)).determinant();
}

double condition_number(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  double smin = sv(sv.size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

}  // namespace

ScalarSolutionSet::ScalarSolutionSet(ScalarProblem1D sp,
                                     std::vector<double> grid,
                                     std::vector<Eigen::MatrixXd> states,
                                     double step)
    : sp_(std::move(sp)), grid_(std::move(grid)), states_(std::move(states)),
      step_(step) {
  if (grid_.size() < 2 || grid_.size() != states_.size())
    throw std::invalid_argument("grid and state counts inconsistent");
}

Eigen::MatrixXd ScalarSolutionSet::state_at(double t) const {
  if (t < a() - 1e-12 * (b() - a()) || t > b() + 1e-12 * (b() - a()))
    throw std::out_of_range("time outside the integrated interval");
  t = std::min(std::max(t, a()), b());
  auto idx = static_cast<std::size_t>((t - a()) / step_);
  if (idx >= steps()) idx = steps();
  while (idx > 0 && grid_[idx] > t) --idx;
  double dt = t - grid_[idx];
  if (std::abs(dt) < 1e-14 * (b() - a())) return states_[idx];
  return rk4_step(sp_, grid_[idx], dt, states_[idx]);
}

ScalarSolutionSet scalar_vertical_solutions(const ScalarProblem1D& sp,
                                            double step,
                                            const Eigen::MatrixXd& seed) {
  const int k = sp.order();
  const double a = sp.a();
  const double b = sp.b();
  if (!(step > 0.0) || step > (b - a) / 16.0)
    throw std::invalid_argument("step must be positive and at most (b-a)/16");

  Eigen::MatrixXd init = Eigen::MatrixXd::Zero(2 * k, k);
  if (seed.size() == 0) {
    init.bottomRows(k) = Eigen::MatrixXd::Identity(k, k);
  } else if (seed.rows() == k && seed.cols() == k) {
    init.bottomRows(k) = seed;
  } else if (seed.rows() == 2 * k && seed.cols() == k) {
    init = seed;
  } else {
    throw std::invalid_argument("seed must be k x k or 2k x k");
  }

  auto n_steps = static_cast<std::size_t>(std::llround((b - a) / step));
  if (n_steps < 16) n_steps = 16;
  std::vector<double> grid;
  std::vector<Eigen::MatrixXd> states;
  grid.reserve(n_steps + 1);
  states.reserve(n_steps + 1);
  grid.push_back(a);
  states.push_back(init);
  for (std::size_t j = 0; j < n_steps; ++j) {
    double t0 = a + (b - a) * static_cast<double>(j) / static_cast<double>(n_steps);
    double t1 = (j + 1 == n_steps)
                    ? b
                    : a + (b - a) * static_cast<double>(j + 1) /
                              static_cast<double>(n_steps);
    states.push_back(rk4_step(sp, t0, t1 - t0, states.back()));
    grid.push_back(t1);
  }
  double actual = (b - a) / static_cast<double>(n_steps);
  return ScalarSolutionSet(sp, std::move(grid), std::move(states), actual);
}

double scalar_subwronskian(const ScalarSolutionSet& sols, std::size_t t_index) {
  if (t_index >= sols.states().size())
    throw std::out_of_range("state index out of range");
  return top_det(sols.states()[t_index], sols.problem().order());
}

double scalar_subwronskian_at(const ScalarSolutionSet& sols, double t) {
  return top_det(sols.state_at(t), sols.problem().order());
}

double eswaran_ratio(const std::vector<double>& h_jet,
                     const ScalarSolutionSet& sols, double t) {
  const int k = sols.problem().order();
  if (static_cast<int>(h_jet.size()) < k + 1)
    throw std::invalid_argument("field jet must carry orders 0..k");
  Eigen::MatrixXd state = sols.state_at(t);
  Eigen::MatrixXd top = state.topRows(k);
  if (!(condition_number(top) < 1e12)) {
    std::ostringstream os;
    os << "solution sub-Wronskian degenerate at t = " << t;
    throw std::domain_error(os.str());
  }
  Eigen::VectorXd h_top(k);
  for (int i = 0; i < k; ++i) h_top(i) = h_jet[static_cast<std::size_t>(i)];
  Eigen::RowVectorXd r = state.row(k);
  double schur =
      h_jet[static_cast<std::size_t>(k)] -
      r * Eigen::PartialPivLU<Eigen::MatrixXd>(top).solve(h_top);
  return (k % 2 == 0) ? schur : -schur;
}

EswaranCheck eswaran_integrated_check(const ScalarProblem1D& sp,
                                      const TestField& field,
                                      const ScalarSolutionSet& sols) {
  const int k = sp.order();
  const double a = sp.a();
  const double b = sp.b();
  EswaranCheck out;
  out.lhs = functional_value(sp, field);

  auto h_jet_at = [&](double t) {
    JetVector jv = field.jet(t, k);
    std::vector<double> j(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i <= k; ++i) j[static_cast<std::size_t>(i)] =
        jv.entries[static_cast<std::size_t>(i)](0);
    return j;
  };

  // window [a, t_c]: the top block of the solution states degenerates at a,
  // so the weighted-square integral is carried by the exact identity
  //   int_a^tc P_k ratio^2 dt = int_a^tc sum_l P_l (h^(l))^2 dt
  //                             - 1/2 y^T S y |_tc,
  // with S assembled from the solution jets through the Legendre transform
  // of the equivalent band problem (scalar-route data only).
  const std::size_t n_steps = sols.steps();
  std::size_t i_c = 0;
  const double cap = a + 0.05 * (b - a);
  for (std::size_t i = 10; i <= n_steps; ++i) {
    double cond = condition_number(sols.states()[i].topRows(k));
    if (cond <= 1e7) {
      i_c = i;
      break;
    }
    if (sols.grid()[i] > cap) {
      i_c = i;
      out.guard_triggered = true;
      break;
    }
  }
  if (i_c == 0) {
    i_c = n_steps;
    out.guard_triggered = true;
  }
  const double t_c = sols.grid()[i_c];
  out.window_end = t_c;

  VariationalProblem band = scalar_to_band(sp);
  double window = 0.0;
  {
    int hd = field.h().degree();
    int deg = 0;
    for (int l = 0; l <= k; ++l)
      deg = std::max(deg, sp.p(l).degree() + 2 * std::max(hd - l, 0));
    double direct = integrate(
        [&](double t) {
          JetVector jet = field.jet(t, k);
          double v = 0.0;
          for (int l = 0; l <= k; ++l) {
            double hl = jet.entries[static_cast<std::size_t>(l)](0);
            v += sp.p(l).eval(t)(0, 0) * hl * hl;
          }
          return v;
        },
        a, t_c, nodes_for_degree(deg));

    const Eigen::MatrixXd& state = sols.states()[i_c];
    Eigen::MatrixXd y_blk(k, k), z_blk(k, k);
    for (int c = 0; c < k; ++c) {
      JetVector sigma_jet;
      for (int d = 0; d < 2 * k; ++d) {
        sigma_jet.entries.push_back(Eigen::VectorXd::Constant(1, state(d, c)));
      }
      auto [ys, zs] = legendre_transform(band, sigma_jet, t_c);
      y_blk.col(c) = ys;
      z_blk.col(c) = zs;
    }
    Eigen::MatrixXd s =
        z_blk * Eigen::PartialPivLU<Eigen::MatrixXd>(y_blk).inverse();
    JetVector hj = field.jet(t_c, k - 1);
    Eigen::VectorXd yhat(k);
    for (int i = 0; i < k; ++i) yhat(i) = hj.entries[static_cast<std::size_t>(i)](0);
    window = direct - 0.5 * yhat.dot(s * yhat);
  }

  // bulk: composite Gauss-Legendre of P_k ratio^2 along the stored grid
  const QuadratureRule& rule = gauss_legendre(8);
  double bulk = 0.0;
  std::size_t stride = std::max<std::size_t>(1, n_steps / 256);
  std::size_t i = i_c;
  std::size_t fine_until = std::min(n_steps, i_c + 32);
  while (i < n_steps) {
    std::size_t j = (i < fine_until) ? i + 1 : std::min(i + stride, n_steps);
    double lo = sols.grid()[i];
    double hi = sols.grid()[j];
    double mid = 0.5 * (lo + hi);
    double half = 0.5 * (hi - lo);
    double s = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      double t = mid + half * rule.nodes[q];
      double ratio = eswaran_ratio(h_jet_at(t), sols, t);
      s += rule.weights[q] * sp.p(k).eval(t)(0, 0) * ratio * ratio;
    }
    bulk += s * half;
    i = j;
  }

  out.rhs = window + bulk;
  return out;
}

ConjugacyResult scalar_conjugate_points(const ScalarSolutionSet& sols,
                                        const ConjugacyOptions& opts) {
  ConjugacyResult res;
  const double a = sols.a();
  const double b = sols.b();
  res.delta = opts.delta > 0.0
                  ? opts.delta
                  : std::max(10.0 * sols.step(), 1e-3 * (b - a));

  res.sample_times = sols.grid();
  res.wronskian.reserve(res.sample_times.size());
  for (std::size_t i = 0; i < res.sample_times.size(); ++i) {
    res.wronskian.push_back(scalar_subwronskian(sols, i));
  }

  ZeroScanOptions scan_opts;
  scan_opts.refine_tol = opts.refine_tol;
  scan_opts.tangential_threshold = opts.tangential_threshold;
  auto zeros =
      scan_zeros(res.sample_times, res.wronskian, a + res.delta, b, scan_opts,
                 [&](double t) { return scalar_subwronskian_at(sols, t); });

  bool any_sign_change = false;
  bool any_tangential = false;
  for (const auto& z : zeros) {
    res.conjugate_points.push_back({z.t, z.sign_change});
    any_sign_change = any_sign_change || z.sign_change;
    any_tangential = any_tangential || !z.sign_change;
  }
  if (any_sign_change) {
    res.verdict = Verdict::ConjugatePointFound;
    res.note = "conjugate point(s) detected by the scalar route.";
  } else if (any_tangential) {
    res.verdict = Verdict::Inconclusive;
    res.note = "unresolved near-zero of the scalar sub-Wronskian.";
  } else {
    res.verdict = Verdict::PositiveDefiniteCertified;
    res.note = "no conjugate points found by the scalar route.";
  }
  return res;
}

}  // namespace varjacobi
