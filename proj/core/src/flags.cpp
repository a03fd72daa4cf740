#include "varjacobi/flags.hpp"

#include <limits>
#include <stdexcept>

namespace varjacobi {

namespace {

Eigen::MatrixXd juxtapose(const FrameJetStack& stack, int up_to) {
  if (up_to < 0 || up_to >= static_cast<int>(stack.jets.size()))
    throw std::invalid_argument("jet order out of range for this stack");
  Eigen::Index rows = stack.jets.front().rows();
  Eigen::Index n = stack.dim_n;
  Eigen::MatrixXd f(rows, (up_to + 1) * n);
  for (int j = 0; j <= up_to; ++j) {
    f.middleCols(j * n, n) = stack.jets[static_cast<std::size_t>(j)];
  }
  return f;
}

int numerical_rank(const Eigen::MatrixXd& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > rel_tol * sv(0)) ++r;
  }
  return r;
}

FrameJetStack build_stack(const FrameTrajectory& traj, double t,
                          const Eigen::MatrixXd& frame, int max_order) {
  const auto& sys = traj.system();
  const Eigen::Index n = sys.problem().dim();
  if (max_order < 0) throw std::invalid_argument("negative jet order");
  if (max_order > 2 * sys.problem().order() - 1)
    throw std::invalid_argument("jet order exceeds 2k-1");

  // M = Psi^T obeys M' = M H^T, so M^(j) = M G_j with
  // G_0 = I and G_{j+1} = H^T G_j + G_j'. Each recursion step consumes one
  // derivative order, so G_j is carried as a jet of shrinking length.
  Eigen::MatrixXd m0 = frame.transpose();
  MatrixJet ht = jet_transpose(sys.H_jet(t, max_order));

  FrameJetStack stack;
  stack.t = t;
  stack.dim_n = n;
  stack.jets.reserve(static_cast<std::size_t>(max_order) + 1);
  stack.jets.push_back(m0.leftCols(n));

  MatrixJet g(static_cast<std::size_t>(max_order) + 1,
              Eigen::MatrixXd::Identity(m0.rows(), m0.cols()));
  for (std::size_t r = 1; r < g.size(); ++r) g[r].setZero();

  for (int j = 1; j <= max_order; ++j) {
    std::size_t len = g.size() - 1;  // orders 0 .. len-1 of G_j
    MatrixJet next(len, Eigen::MatrixXd());
    for (std::size_t r = 0; r < len; ++r) {
      Eigen::MatrixXd v = g[r + 1];
      for (std::size_t p = 0; p <= r; ++p) {
        v += binomial(static_cast<int>(r), static_cast<int>(p)) * ht[p] *
             g[r - p];
      }
      next[r] = std::move(v);
    }
    g = std::move(next);
    stack.jets.push_back((m0 * g[0]).leftCols(n));
  }
  return stack;
}

}  // namespace

std::string symplectic_class_string(SymplecticClass c) {
  switch (c) {
    case SymplecticClass::Isotropic:
      return "isotropic";
    case SymplecticClass::Lagrangian:
      return "lagrangian";
    case SymplecticClass::Coisotropic:
      return "coisotropic";
    case SymplecticClass::Full:
      return "full";
    case SymplecticClass::None:
      return "none";
  }
  return "none";
}

FrameJetStack frame_jet(const FrameTrajectory& traj, std::size_t t_index,
                        int max_order) {
  if (t_index >= traj.frames().size())
    throw std::out_of_range("frame index out of range");
  return build_stack(traj, traj.grid()[t_index], traj.frames()[t_index],
                     max_order);
}

FrameJetStack frame_jet_at(const FrameTrajectory& traj, double t,
                           int max_order) {
  return build_stack(traj, t, traj.frame_at(t), max_order);
}

int curve_rank(const FrameJetStack& stack, double rank_tol) {
  int k = stack.order_k();
  Eigen::MatrixXd f = juxtapose(stack, k);
  return numerical_rank(f, rank_tol) - static_cast<int>(stack.half_dim());
}

FanningResult fanning_check(const FrameJetStack& stack, double cond_limit) {
  int k = stack.order_k();
  Eigen::MatrixXd f = juxtapose(stack, 2 * k - 1);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(f);
  const auto& sv = svd.singularValues();
  double smin = sv(sv.size() - 1);
  FanningResult res;
  if (smin <= 0.0) {
    res.is_fanning = false;
    res.condition_number = std::numeric_limits<double>::infinity();
  } else {
    res.condition_number = sv(0) / smin;
    res.is_fanning = res.condition_number < cond_limit;
  }
  return res;
}

SymplecticClass classify_symplectic(const FrameJetStack& stack, int order_i,
                                    double tol) {
  Eigen::MatrixXd f = juxtapose(stack, order_i);
  const Eigen::Index kn = stack.half_dim();
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * kn, 2 * kn);
  j.topRightCorner(kn, kn) = Eigen::MatrixXd::Identity(kn, kn);
  j.bottomLeftCorner(kn, kn) = -Eigen::MatrixXd::Identity(kn, kn);

  int d = numerical_rank(f, tol);
  double scale = f.squaredNorm();
  bool isotropic = (f.transpose() * j * f).norm() <= tol * scale;

  if (isotropic) {
    return d == kn ? SymplecticClass::Lagrangian : SymplecticClass::Isotropic;
  }
  if (d == 2 * kn) return SymplecticClass::Full;

  // coisotropic: the symplectic orthogonal ker(F^T J) sits inside span(F)
  Eigen::MatrixXd fj = f.transpose() * j;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(fj, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() > 0 ? sv(0) : 0.0;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(f);
  bool contained = true;
  for (Eigen::Index c = 0; c < svd.matrixV().cols(); ++c) {
    bool in_kernel = c >= sv.size() || sv(c) <= tol * smax;
    if (!in_kernel) continue;
    Eigen::VectorXd v = svd.matrixV().col(c);
    Eigen::VectorXd proj = f * cod.solve(v);
    if ((v - proj).norm() > tol * v.norm()) {
      contained = false;
      break;
    }
  }
  return contained ? SymplecticClass::Coisotropic : SymplecticClass::None;
}

std::vector<SymplecticClass> flag_profile(const FrameJetStack& stack,
                                          double tol) {
  std::vector<SymplecticClass> out;
  out.reserve(stack.jets.size());
  for (int i = 0; i < static_cast<int>(stack.jets.size()); ++i) {
    out.push_back(classify_symplectic(stack, i, tol));
  }
  return out;
}

int vertical_intersection_dim(const FrameJetStack& stack, double rank_tol) {
  int k = stack.order_k();
  Eigen::MatrixXd f = juxtapose(stack, k - 1);
  const Eigen::Index kn = stack.half_dim();
  // Rank threshold relative to the scale of the full juxtaposition: at a
  // conjugate point the top block is itself near zero, so a threshold
  // relative to the block alone would never see the drop.
  Eigen::JacobiSVD<Eigen::MatrixXd> full(f);
  double scale = full.singularValues().size() > 0 ? full.singularValues()(0) : 0.0;
  if (scale == 0.0) return static_cast<int>(kn);
  Eigen::JacobiSVD<Eigen::MatrixXd> top(f.topRows(kn));
  const auto& sv = top.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rank_tol * scale) ++r;
  return static_cast<int>(kn) - r;
}

}  // namespace varjacobi
