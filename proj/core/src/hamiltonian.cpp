#include "varjacobi/hamiltonian.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace varjacobi {

namespace {

Eigen::MatrixXd sym(const Eigen::MatrixXd& m) {
  return 0.5 * (m + m.transpose());
}

void check_jet_order(const JetVector& jet, int needed) {
  if (jet.order() < needed) {
    std::ostringstream os;
    os << "jet of order >= " << needed << " required, got " << jet.order();
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

HamiltonianSystem::HamiltonianSystem(VariationalProblem prob)
    : prob_(std::move(prob)),
      kn_(static_cast<Eigen::Index>(prob_.order()) * prob_.dim()) {}

Eigen::MatrixXd HamiltonianSystem::mkk_inverse(double t) const {
  Eigen::MatrixXd mkk = prob_.diag(prob_.order()).eval(t);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(mkk);
  if (!lu.isInvertible()) {
    std::ostringstream os;
    os << "top coefficient block singular at t = " << t;
    throw std::domain_error(os.str());
  }
  return sym(lu.inverse());
}

Eigen::MatrixXd HamiltonianSystem::A(double t) const {
  const int k = prob_.order();
  const int n = prob_.dim();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(kn_, kn_);
  for (int i = 0; i + 1 < k; ++i) {
    a.block(i * n, (i + 1) * n, n, n) = Eigen::MatrixXd::Identity(n, n);
  }
  a.block((k - 1) * n, (k - 1) * n, n, n) =
      -mkk_inverse(t) * prob_.super(k - 1).eval(t).transpose();
  return a;
}

Eigen::MatrixXd HamiltonianSystem::B(double t) const {
  const int k = prob_.order();
  const int n = prob_.dim();
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(kn_, kn_);
  b.block((k - 1) * n, (k - 1) * n, n, n) = mkk_inverse(t);
  return b;
}

Eigen::MatrixXd HamiltonianSystem::C(double t) const {
  const int k = prob_.order();
  const int n = prob_.dim();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(kn_, kn_);
  for (int i = 0; i + 1 < k; ++i) {
    c.block(i * n, i * n, n, n) = prob_.diag(i).eval(t);
  }
  Eigen::MatrixXd mk1k = prob_.super(k - 1).eval(t);
  Eigen::MatrixXd tilde =
      prob_.diag(k - 1).eval(t) - mk1k * mkk_inverse(t) * mk1k.transpose();
  c.block((k - 1) * n, (k - 1) * n, n, n) = sym(tilde);
  for (int i = 0; i + 1 < k; ++i) {
    Eigen::MatrixXd s = prob_.super(i).eval(t);
    c.block(i * n, (i + 1) * n, n, n) = s;
    c.block((i + 1) * n, i * n, n, n) = s.transpose();
  }
  return c;
}

Eigen::MatrixXd HamiltonianSystem::H(double t) const {
  Eigen::MatrixXd h(2 * kn_, 2 * kn_);
  Eigen::MatrixXd a = A(t);
  h.topLeftCorner(kn_, kn_) = a;
  h.topRightCorner(kn_, kn_) = B(t);
  h.bottomLeftCorner(kn_, kn_) = C(t);
  h.bottomRightCorner(kn_, kn_) = -a.transpose();
  return h;
}

MatrixJet HamiltonianSystem::H_jet(double t, int order) const {
  const int k = prob_.order();
  const int n = prob_.dim();

  MatrixJet mkk = poly_jet(prob_.diag(k), t, order);
  {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(mkk[0]);
    if (!lu.isInvertible()) {
      std::ostringstream os;
      os << "top coefficient block singular at t = " << t;
      throw std::domain_error(os.str());
    }
  }
  MatrixJet inv = jet_inverse(mkk);
  for (auto& m : inv) m = sym(m);

  MatrixJet super_k = poly_jet(prob_.super(k - 1), t, order);
  MatrixJet super_k_t = jet_transpose(super_k);
  // bottom-right block of A and the Schur-corrected bottom-right block of C
  MatrixJet a_corner = jet_neg(jet_product(inv, super_k_t));
  MatrixJet c_corner = jet_sub(poly_jet(prob_.diag(k - 1), t, order),
                               jet_product(super_k, jet_product(inv, super_k_t)));
  for (auto& m : c_corner) m = sym(m);

  std::vector<MatrixJet> diag_jets, super_jets;
  for (int i = 0; i + 1 < k; ++i) {
    diag_jets.push_back(poly_jet(prob_.diag(i), t, order));
    super_jets.push_back(poly_jet(prob_.super(i), t, order));
  }

  MatrixJet out;
  out.reserve(static_cast<std::size_t>(order) + 1);
  for (int m = 0; m <= order; ++m) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * kn_, 2 * kn_);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(kn_, kn_);
    if (m == 0) {
      for (int i = 0; i + 1 < k; ++i) {
        a.block(i * n, (i + 1) * n, n, n) = Eigen::MatrixXd::Identity(n, n);
      }
    }
    a.block((k - 1) * n, (k - 1) * n, n, n) = a_corner[m];

    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(kn_, kn_);
    for (int i = 0; i + 1 < k; ++i) {
      c.block(i * n, i * n, n, n) = diag_jets[i][m];
      const Eigen::MatrixXd& s = super_jets[i][m];
      c.block(i * n, (i + 1) * n, n, n) = s;
      c.block((i + 1) * n, i * n, n, n) = s.transpose();
    }
    c.block((k - 1) * n, (k - 1) * n, n, n) = c_corner[m];

    h.topLeftCorner(kn_, kn_) = a;
    h.topRightCorner(kn_, kn_).block((k - 1) * n, (k - 1) * n, n, n) = inv[m];
    h.bottomLeftCorner(kn_, kn_) = c;
    h.bottomRightCorner(kn_, kn_) = -a.transpose();
    out.push_back(std::move(h));
  }
  return out;
}

Eigen::MatrixXd HamiltonianSystem::J(Eigen::Index half_dim) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * half_dim, 2 * half_dim);
  j.topRightCorner(half_dim, half_dim) =
      Eigen::MatrixXd::Identity(half_dim, half_dim);
  j.bottomLeftCorner(half_dim, half_dim) =
      -Eigen::MatrixXd::Identity(half_dim, half_dim);
  return j;
}

HamiltonianSystem build_blocks(const VariationalProblem& prob) {
  return HamiltonianSystem(prob);
}

Eigen::MatrixXd hamiltonian_matrix(const HamiltonianSystem& sys, double t) {
  return sys.H(t);
}

double check_infinitesimally_symplectic(const HamiltonianSystem& sys,
                                        int grid_points) {
  if (grid_points < 2) throw std::invalid_argument("need at least 2 grid points");
  const auto& prob = sys.problem();
  Eigen::MatrixXd j = sys.J();
  double worst = 0.0;
  for (int g = 0; g < grid_points; ++g) {
    double t = prob.a() + (prob.b() - prob.a()) * g / (grid_points - 1);
    Eigen::MatrixXd h = sys.H(t);
    double r = (h.transpose() * j + j * h).norm() / (1.0 + h.norm());
    worst = std::max(worst, r);
  }
  return worst;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> zeroing_transform(
    const VariationalProblem& prob, const JetVector& jet, double t) {
  const int k = prob.order();
  const int n = prob.dim();
  check_jet_order(jet, k);
  Eigen::VectorXd y(static_cast<Eigen::Index>(k) * n);
  for (int i = 0; i < k; ++i) {
    y.segment(i * n, n) = jet.entries[static_cast<std::size_t>(i)];
  }
  Eigen::VectorXd z = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k) * n);
  z.segment((k - 1) * n, n) =
      prob.diag(k).eval(t) * jet.entries[static_cast<std::size_t>(k)] +
      prob.super(k - 1).eval(t).transpose() *
          jet.entries[static_cast<std::size_t>(k - 1)];
  return {std::move(y), std::move(z)};
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> legendre_transform(
    const VariationalProblem& prob, const JetVector& jet, double t) {
  const int k = prob.order();
  const int n = prob.dim();
  check_jet_order(jet, 2 * k - 1);

  Eigen::VectorXd y(static_cast<Eigen::Index>(k) * n);
  for (int i = 0; i < k; ++i) {
    y.segment(i * n, n) = jet.entries[static_cast<std::size_t>(i)];
  }

  auto entry = [&](int d) -> const Eigen::VectorXd& {
    return jet.entries[static_cast<std::size_t>(d)];
  };

  // m-th total derivative of dL/dq_j along the curve, expanded by Leibniz:
  // dL/dq_j = M_jj h^(j) + M_(j-1)j^T h^(j-1) + M_j(j+1) h^(j+1)
  auto dLdq_deriv = [&](int j, int m) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    MatrixJet mjj = poly_jet(prob.diag(j), t, m);
    MatrixJet mj1j = poly_jet(prob.super(j - 1), t, m);
    for (int p = 0; p <= m; ++p) {
      double c = binomial(m, p);
      v += c * (mjj[static_cast<std::size_t>(p)] * entry(j + m - p));
      v += c * (mj1j[static_cast<std::size_t>(p)].transpose() *
                entry(j - 1 + m - p));
    }
    if (j < k) {
      MatrixJet mjj1 = poly_jet(prob.super(j), t, m);
      for (int p = 0; p <= m; ++p) {
        v += binomial(m, p) *
             (mjj1[static_cast<std::size_t>(p)] * entry(j + 1 + m - p));
      }
    }
    return v;
  };

  Eigen::VectorXd z(static_cast<Eigen::Index>(k) * n);
  for (int i = 1; i <= k; ++i) {
    Eigen::VectorXd zi = Eigen::VectorXd::Zero(n);
    for (int j = i; j <= k; ++j) {
      double sign = ((j - i) % 2 == 0) ? 1.0 : -1.0;
      zi += sign * dLdq_deriv(j, j - i);
    }
    z.segment((i - 1) * n, n) = zi;
  }
  return {std::move(y), std::move(z)};
}

double lagrangian_value(const VariationalProblem& prob, const JetVector& jet,
                        double t) {
  const int k = prob.order();
  check_jet_order(jet, k);
  double v = 0.0;
  for (int i = 0; i <= k; ++i) {
    const Eigen::VectorXd& hi = jet.entries[static_cast<std::size_t>(i)];
    v += 0.5 * hi.dot(prob.diag(i).eval(t) * hi);
  }
  for (int i = 0; i < k; ++i) {
    v += jet.entries[static_cast<std::size_t>(i)].dot(
        prob.super(i).eval(t) * jet.entries[static_cast<std::size_t>(i) + 1]);
  }
  return v;
}

double lagrangian_value(const RawCoefficients& raw, const JetVector& jet,
                        double t) {
  check_jet_order(jet, raw.order_k);
  double v = 0.0;
  for (const auto& [key, m] : raw.blocks) {
    auto [i, j] = key;
    const Eigen::VectorXd& hi = jet.entries[static_cast<std::size_t>(i)];
    const Eigen::VectorXd& hj = jet.entries[static_cast<std::size_t>(j)];
    double term = hi.dot(m.eval(t) * hj);
    v += (i == j) ? 0.5 * term : term;
  }
  return v;
}

}  // namespace varjacobi
