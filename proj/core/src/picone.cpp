#include "varjacobi/picone.hpp"

#include "varjacobi/quadrature.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace varjacobi {

namespace {

double condition_number(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  double smin = sv(sv.size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

// degree of t -> L(t, jet of h) for a band problem
int band_integrand_degree(const VariationalProblem& prob, int h_degree) {
  int d = 0;
  for (int i = 0; i <= prob.order(); ++i) {
    int hi = std::max(h_degree - i, 0);
    d = std::max(d, prob.diag(i).degree() + 2 * hi);
  }
  for (int i = 0; i < prob.order(); ++i) {
    int hi = std::max(h_degree - i, 0);
    int hj = std::max(h_degree - i - 1, 0);
    d = std::max(d, prob.super(i).degree() + hi + hj);
  }
  return d;
}

struct FramePoint {
  Eigen::MatrixXd s;       // Z Y^{-1}
  double cond_y = 0.0;
};

FramePoint riccati_at(const Eigen::MatrixXd& frame, double cond_limit,
                      double t) {
  auto [y, z] = vertical_blocks(frame);
  FramePoint fp;
  fp.cond_y = condition_number(y);
  if (!(fp.cond_y < cond_limit)) {
    std::ostringstream os;
    os << "vertical frame ill-conditioned at t = " << t
       << " (cond " << fp.cond_y << ")";
    throw std::domain_error(os.str());
  }
  fp.s = z * Eigen::PartialPivLU<Eigen::MatrixXd>(y).inverse();
  return fp;
}

}  // namespace

PiconePointResult picone_lhs_rhs(const VariationalProblem& prob,
                                 const FrameTrajectory& traj,
                                 const TestField& field, std::size_t t_index) {
  if (t_index >= traj.frames().size())
    throw std::out_of_range("frame index out of range");
  const double t = traj.grid()[t_index];
  const auto& sys = traj.system();
  const int k = prob.order();

  auto [y_blk, z_blk] = vertical_frame(traj, t_index);
  PiconePointResult res;
  res.cond_y = condition_number(y_blk);
  if (!(res.cond_y < 1e8)) {
    std::ostringstream os;
    os << "vertical frame ill-conditioned at t = " << t << " (cond "
       << res.cond_y << ")";
    throw std::domain_error(os.str());
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_y(y_blk);
  Eigen::MatrixXd y_inv = lu_y.inverse();
  Eigen::MatrixXd s = z_blk * y_inv;

  Eigen::MatrixXd a = sys.A(t);
  Eigen::MatrixXd b = sys.B(t);
  Eigen::MatrixXd c = sys.C(t);
  // exact derivative of S = Z Y^{-1} through the flow equations
  Eigen::MatrixXd y_dot = a * y_blk + b * z_blk;
  Eigen::MatrixXd z_dot = c * y_blk - a.transpose() * z_blk;
  Eigen::MatrixXd s_dot = (z_dot - s * y_dot) * y_inv;

  JetVector jet = field.jet(t, k);
  auto [yhat, zhat] = zeroing_transform(prob, jet, t);
  Eigen::VectorXd yhat_dot(yhat.size());
  const Eigen::Index n = prob.dim();
  for (int i = 0; i < k; ++i) {
    yhat_dot.segment(i * n, n) = jet.entries[static_cast<std::size_t>(i) + 1];
  }

  res.lhs = yhat_dot.dot(s * yhat) + yhat.dot(s_dot * yhat) +
            yhat.dot(s * yhat_dot);
  Eigen::VectorXd w = zhat - s * yhat;
  res.rhs = zhat.dot(b * zhat) + yhat.dot(c * yhat) - w.dot(b * w);
  return res;
}

double functional_value(const VariationalProblem& prob, const TestField& field) {
  const int k = prob.order();
  int deg = band_integrand_degree(prob, field.h().degree());
  return integrate(
      [&](double t) { return lagrangian_value(prob, field.jet(t, k), t); },
      prob.a(), prob.b(), nodes_for_degree(deg));
}

double functional_value(const RawCoefficients& raw, const TestField& field) {
  int d = 0;
  int hd = field.h().degree();
  for (const auto& [key, m] : raw.blocks) {
    auto [i, j] = key;
    d = std::max(d, m.degree() + std::max(hd - i, 0) + std::max(hd - j, 0));
  }
  return integrate(
      [&](double t) {
        return lagrangian_value(raw, field.jet(t, raw.order_k), t);
      },
      raw.a, raw.b, nodes_for_degree(d));
}

double functional_value(const ScalarProblem1D& sp, const TestField& field) {
  const int k = sp.order();
  int hd = field.h().degree();
  int d = 0;
  for (int l = 0; l <= k; ++l) {
    d = std::max(d, sp.p(l).degree() + 2 * std::max(hd - l, 0));
  }
  return integrate(
      [&](double t) {
        JetVector jet = field.jet(t, k);
        double v = 0.0;
        for (int l = 0; l <= k; ++l) {
          double hl = jet.entries[static_cast<std::size_t>(l)](0);
          v += sp.p(l).eval(t)(0, 0) * hl * hl;
        }
        return v;
      },
      sp.a(), sp.b(), nodes_for_degree(d));
}

PiconeFunctional functional_via_picone(const VariationalProblem& prob,
                                       const FrameTrajectory& traj,
                                       const TestField& field,
                                       const ConjugacyResult& conjugacy) {
  if (!conjugacy.conjugate_points.empty()) {
    std::ostringstream os;
    os << "conjugate point candidate at t = "
       << conjugacy.conjugate_points.front().t
       << "; the square-completion route needs the vertical frame invertible "
          "on (a, b]";
    throw std::domain_error(os.str());
  }

  const int k = prob.order();
  const double a = traj.a();
  const double b = traj.b();
  const std::size_t n_steps = traj.steps();
  PiconeFunctional out;

  // The vertical frame degenerates at a (Y(a) = 0), so [a, t_c] is carried
  // by the exact boundary identity
  //   int_a^tc (z-Sy)^T B (z-Sy) dt = int_a^tc 2L dt - y^T S y |_tc,
  // which needs the frame only at t_c itself.
  std::size_t i_c = 0;
  const double cap = a + 0.05 * (b - a);
  for (std::size_t i = 10; i <= n_steps; ++i) {
    auto [y_blk, z_blk] = vertical_frame(traj, i);
    (void)z_blk;
    double cond = condition_number(y_blk);
    if (cond <= 1e7) {
      i_c = i;
      break;
    }
    if (traj.grid()[i] > cap) {
      i_c = i;
      out.guard_triggered = true;
      break;
    }
  }
  if (i_c == 0) {
    i_c = n_steps;
    out.guard_triggered = true;
  }
  const double t_c = traj.grid()[i_c];
  out.window_end = t_c;

  double window = 0.0;
  {
    int deg = band_integrand_degree(prob, field.h().degree());
    double two_l = integrate(
        [&](double t) {
          return 2.0 * lagrangian_value(prob, field.jet(t, k), t);
        },
        a, t_c, nodes_for_degree(deg));
    FramePoint fp = riccati_at(traj.frames()[i_c], 1e10, t_c);
    JetVector jet = field.jet(t_c, k);
    auto [yhat, zhat] = zeroing_transform(prob, jet, t_c);
    (void)zhat;
    window = two_l - yhat.dot(fp.s * yhat);
  }

  const auto& sys = traj.system();
  auto integrand = [&](double t) {
    Eigen::MatrixXd frame = traj.frame_at(t);
    FramePoint fp = riccati_at(frame, 1e12, t);
    JetVector jet = field.jet(t, k);
    auto [yhat, zhat] = zeroing_transform(prob, jet, t);
    Eigen::VectorXd sy = fp.s * yhat;
    if (sy.norm() > 1e8 * (1.0 + zhat.norm())) out.guard_triggered = true;
    Eigen::VectorXd w = zhat - sy;
    return w.dot(sys.B(t) * w);
  };

  // composite Gauss-Legendre along the stored grid: every step for a while
  // after t_c (where S still varies fast), then strided panels
  const QuadratureRule& rule = gauss_legendre(8);
  double bulk = 0.0;
  std::size_t stride = std::max<std::size_t>(1, n_steps / 256);
  std::size_t i = i_c;
  std::size_t fine_until = std::min(n_steps, i_c + 32);
  while (i < n_steps) {
    std::size_t j = (i < fine_until) ? i + 1 : std::min(i + stride, n_steps);
    double lo = traj.grid()[i];
    double hi = traj.grid()[j];
    double mid = 0.5 * (lo + hi);
    double half = 0.5 * (hi - lo);
    double s = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      s += rule.weights[q] * integrand(mid + half * rule.nodes[q]);
    }
    bulk += s * half;
    i = j;
  }

  out.value = 0.5 * (window + bulk);
  return out;
}

SymmetryResiduals frame_symmetry_residuals(const FrameTrajectory& traj) {
  SymmetryResiduals res;
  for (std::size_t i = 0; i < traj.frames().size(); ++i) {
    auto [y, z] = vertical_frame(traj, i);
    double commut = (y.transpose() * z - z.transpose() * y).norm() /
                    (1.0 + y.norm() * z.norm());
    res.yz_commutator = std::max(res.yz_commutator, commut);
    double cond = condition_number(y);
    if (cond < 1e8) {
      Eigen::MatrixXd s = z * Eigen::PartialPivLU<Eigen::MatrixXd>(y).inverse();
      double asym = (s - s.transpose()).norm() / (1.0 + s.norm());
      res.riccati_asymmetry = std::max(res.riccati_asymmetry, asym);
    }
  }
  return res;
}

double discrete_hessian_min_eig(const VariationalProblem& prob,
                                int basis_size) {
  if (basis_size < 4) throw std::invalid_argument("basis size must be >= 4");
  const int k = prob.order();
  const int n = prob.dim();
  const double a = prob.a();
  const double b = prob.b();

  // shifted Legendre polynomials in t-coefficient space
  std::vector<std::vector<double>> legendre;
  legendre.push_back({1.0});
  if (basis_size > 1) {
    double alpha = 2.0 / (b - a);
    double beta = -(a + b) / (b - a);
    legendre.push_back({beta, alpha});
    auto mul_u = [&](const std::vector<double>& p) {
      std::vector<double> out(p.size() + 1, 0.0);
      for (std::size_t i = 0; i < p.size(); ++i) {
        out[i] += beta * p[i];
        out[i + 1] += alpha * p[i];
      }
      return out;
    };
    for (int m = 1; m + 1 < basis_size; ++m) {
      std::vector<double> up = mul_u(legendre[static_cast<std::size_t>(m)]);
      std::vector<double> next(up.size(), 0.0);
      for (std::size_t i = 0; i < up.size(); ++i) {
        next[i] = (2.0 * m + 1.0) * up[i];
      }
      const auto& prev = legendre[static_cast<std::size_t>(m - 1)];
      for (std::size_t i = 0; i < prev.size(); ++i) {
        next[i] -= m * prev[i];
      }
      for (auto& c : next) c /= (m + 1.0);
      legendre.push_back(std::move(next));
    }
  }

  std::vector<TestField> basis;
  basis.reserve(static_cast<std::size_t>(basis_size) * n);
  for (int p = 0; p < basis_size; ++p) {
    for (int c = 0; c < n; ++c) {
      const auto& cs = legendre[static_cast<std::size_t>(p)];
      std::vector<Eigen::MatrixXd> coeffs;
      coeffs.reserve(cs.size());
      for (double v : cs) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, 1);
        m(c, 0) = v;
        coeffs.push_back(std::move(m));
      }
      basis.emplace_back(k, a, b, MatrixPolynomial(n, 1, std::move(coeffs)));
    }
  }
  const auto m_total = static_cast<Eigen::Index>(basis.size());

  int h_deg = 2 * k + basis_size - 1;
  int deg = band_integrand_degree(prob, h_deg);
  int nodes = nodes_for_degree(std::max(deg, 2 * h_deg));
  const QuadratureRule& rule = gauss_legendre(nodes);

  // per-node jets for every basis field, then Gram assembly
  std::vector<std::vector<JetVector>> jets(
      basis.size(), std::vector<JetVector>(rule.nodes.size()));
  std::vector<double> ts(rule.nodes.size());
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    ts[q] = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[q];
    for (std::size_t m = 0; m < basis.size(); ++m) {
      jets[m][q] = basis[m].jet(ts[q], k);
    }
  }

  // symmetric bilinear extension of the functional:
  // b(u,v) = int 1/2 sum u^(i)T M_ii v^(i)
  //          + 1/2 sum (u^(i)T M_s v^(i+1) + v^(i)T M_s u^(i+1))
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(m_total, m_total);
  Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(m_total, m_total);
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    double wq = rule.weights[q] * 0.5 * (b - a);
    std::vector<Eigen::MatrixXd> diag_vals, super_vals;
    for (int i = 0; i <= k; ++i) diag_vals.push_back(prob.diag(i).eval(ts[q]));
    for (int i = 0; i < k; ++i) super_vals.push_back(prob.super(i).eval(ts[q]));
    for (Eigen::Index r = 0; r < m_total; ++r) {
      const auto& ju = jets[static_cast<std::size_t>(r)][q];
      for (Eigen::Index c = r; c < m_total; ++c) {
        const auto& jv = jets[static_cast<std::size_t>(c)][q];
        double val = 0.0;
        for (int i = 0; i <= k; ++i) {
          val += 0.5 * ju.entries[static_cast<std::size_t>(i)].dot(
                           diag_vals[static_cast<std::size_t>(i)] *
                           jv.entries[static_cast<std::size_t>(i)]);
        }
        for (int i = 0; i < k; ++i) {
          val += 0.5 * ju.entries[static_cast<std::size_t>(i)].dot(
                           super_vals[static_cast<std::size_t>(i)] *
                           jv.entries[static_cast<std::size_t>(i) + 1]);
          val += 0.5 * jv.entries[static_cast<std::size_t>(i)].dot(
                           super_vals[static_cast<std::size_t>(i)] *
                           ju.entries[static_cast<std::size_t>(i) + 1]);
        }
        gram(r, c) += wq * val;
        mass(r, c) += wq * ju.entries[0].dot(jv.entries[0]);
      }
    }
  }
  gram = gram.selfadjointView<Eigen::Upper>();
  mass = mass.selfadjointView<Eigen::Upper>();

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(gram, mass);
  return ges.eigenvalues().minCoeff();
}

}  // namespace varjacobi
