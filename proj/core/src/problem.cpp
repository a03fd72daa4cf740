#include "varjacobi/problem.hpp"

#include "varjacobi/jet.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace varjacobi {

namespace {

bool exactly_symmetric(const MatrixPolynomial& p) {
  return p.is_symmetric(0.0);
}

MatrixPolynomial symmetric_part(const MatrixPolynomial& p) {
  return 0.5 * (p + p.transpose());
}

}  // namespace

VariationalProblem::VariationalProblem(int order_k, int dim_n, double a,
                                       double b,
                                       std::vector<MatrixPolynomial> diag_blocks,
                                       std::vector<MatrixPolynomial> super_blocks)
    : k_(order_k), n_(dim_n), a_(a), b_(b), diag_(std::move(diag_blocks)),
      super_(std::move(super_blocks)) {
  if (k_ < 1) throw std::invalid_argument("order must be >= 1");
  if (n_ < 1) throw std::invalid_argument("dimension must be >= 1");
  if (!(a_ < b_)) throw std::invalid_argument("interval must satisfy a < b");
  if (diag_.size() != static_cast<std::size_t>(k_) + 1)
    throw std::invalid_argument("expected k+1 diagonal blocks");
  if (super_.size() != static_cast<std::size_t>(k_))
    throw std::invalid_argument("expected k super-diagonal blocks");
  for (auto& m : diag_) {
    if (m.rows() != n_ || m.cols() != n_)
      throw std::invalid_argument("diagonal block shape mismatch");
    if (!exactly_symmetric(m)) {
      m = symmetric_part(m);
      symmetrized_ = true;
    }
  }
  for (const auto& m : super_) {
    if (m.rows() != n_ || m.cols() != n_)
      throw std::invalid_argument("super-diagonal block shape mismatch");
  }
}

const MatrixPolynomial& VariationalProblem::diag(int i) const {
  if (i < 0 || i > k_) throw std::out_of_range("diagonal block index");
  return diag_[static_cast<std::size_t>(i)];
}

const MatrixPolynomial& VariationalProblem::super(int i) const {
  if (i < 0 || i >= k_) throw std::out_of_range("super-diagonal block index");
  return super_[static_cast<std::size_t>(i)];
}

ScalarProblem1D::ScalarProblem1D(int order_k, double a, double b,
                                 std::vector<MatrixPolynomial> p_coeffs)
    : k_(order_k), a_(a), b_(b), p_(std::move(p_coeffs)) {
  if (k_ < 1) throw std::invalid_argument("order must be >= 1");
  if (!(a_ < b_)) throw std::invalid_argument("interval must satisfy a < b");
  if (p_.size() != static_cast<std::size_t>(k_) + 1)
    throw std::invalid_argument("expected k+1 scalar coefficients");
  for (const auto& p : p_) {
    if (p.rows() != 1 || p.cols() != 1)
      throw std::invalid_argument("scalar coefficient must be 1x1");
  }
}

const MatrixPolynomial& ScalarProblem1D::p(int l) const {
  if (l < 0 || l > k_) throw std::out_of_range("scalar coefficient index");
  return p_[static_cast<std::size_t>(l)];
}

ValidationReport validate_problem(const VariationalProblem& prob,
                                  int grid_points) {
  if (grid_points < 2) throw std::invalid_argument("need at least 2 grid points");
  ValidationReport rep;
  rep.pass = true;
  rep.first_failing_t = std::numeric_limits<double>::quiet_NaN();
  rep.min_eigenvalue = std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  for (int g = 0; g < grid_points; ++g) {
    double t = prob.a() + (prob.b() - prob.a()) * g / (grid_points - 1);
    Eigen::MatrixXd mkk = prob.diag(prob.order()).eval(t);
    es.compute(mkk, Eigen::EigenvaluesOnly);
    double lo = es.eigenvalues().minCoeff();
    double hi = es.eigenvalues().maxCoeff();
    rep.min_eigenvalue = std::min(rep.min_eigenvalue, lo);
    if (!(lo > 1e-12 * (1.0 + std::abs(hi)))) {
      rep.pass = false;
      rep.first_failing_t = t;
      std::ostringstream os;
      os << "top coefficient block not positive definite at t = " << t
         << " (min eigenvalue " << lo << ")";
      rep.message = os.str();
      return rep;
    }
  }
  rep.message = "strong Legendre condition holds on the grid";
  return rep;
}

ValidationReport validate_scalar(const ScalarProblem1D& sp, int grid_points) {
  if (grid_points < 2) throw std::invalid_argument("need at least 2 grid points");
  ValidationReport rep;
  rep.pass = true;
  rep.first_failing_t = std::numeric_limits<double>::quiet_NaN();
  rep.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (int g = 0; g < grid_points; ++g) {
    double t = sp.a() + (sp.b() - sp.a()) * g / (grid_points - 1);
    double v = sp.p(sp.order()).eval(t)(0, 0);
    rep.min_eigenvalue = std::min(rep.min_eigenvalue, v);
    if (!(v > 1e-12 * (1.0 + std::abs(v)))) {
      rep.pass = false;
      rep.first_failing_t = t;
      std::ostringstream os;
      os << "top coefficient not positive at t = " << t << " (value " << v
         << ")";
      rep.message = os.str();
      return rep;
    }
  }
  rep.message = "top coefficient positive on the grid";
  return rep;
}

VariationalProblem reduce_to_band(const RawCoefficients& raw) {
  const int k = raw.order_k;
  const int n = raw.dim_n;
  std::map<std::pair<int, int>, MatrixPolynomial> blocks;
  for (const auto& [key, m] : raw.blocks) {
    auto [i, j] = key;
    if (i < 0 || j < i || j > k)
      throw std::invalid_argument("raw block index out of range");
    if (m.rows() != n || m.cols() != n)
      throw std::invalid_argument("raw block shape mismatch");
    if (!m.is_zero()) blocks[key] = m;
  }

  auto add_to = [&](int i, int j, const MatrixPolynomial& m) {
    auto it = blocks.find({i, j});
    if (it == blocks.end()) {
      blocks.emplace(std::make_pair(i, j), m);
    } else {
      it->second += m;
    }
  };

  // h^(i)T M h^(j)  =>  -h^(i+1)T M h^(j-1) - h^(i)T M' h^(j-1)
  // (integration by parts; boundary terms vanish on the admissible class).
  // Widest couplings first, so each sweep only feeds the next gap down.
  for (int gap = k; gap >= 2; --gap) {
    for (int i = 0; i + gap <= k; ++i) {
      auto it = blocks.find({i, i + gap});
      if (it == blocks.end()) continue;
      MatrixPolynomial m = it->second;
      blocks.erase(it);
      if (m.is_zero()) continue;
      int j = i + gap;
      if (i + 1 == j - 1) {
        // lands on the diagonal, where the convention carries 1/2
        add_to(i + 1, j - 1, -(m + m.transpose()));
      } else {
        add_to(i + 1, j - 1, -m);
      }
      add_to(i, j - 1, -m.derivative());
    }
  }

  std::vector<MatrixPolynomial> diag(static_cast<std::size_t>(k) + 1,
                                     MatrixPolynomial(n, n));
  std::vector<MatrixPolynomial> super(static_cast<std::size_t>(k),
                                      MatrixPolynomial(n, n));
  for (const auto& [key, m] : blocks) {
    auto [i, j] = key;
    if (j == i) {
      diag[static_cast<std::size_t>(i)] = m;
    } else {
      super[static_cast<std::size_t>(i)] = m;
    }
  }
  return VariationalProblem(k, n, raw.a, raw.b, std::move(diag),
                            std::move(super));
}

ScalarProblem1D diagonalize_1d(const VariationalProblem& prob) {
  if (prob.dim() != 1)
    throw std::invalid_argument("diagonalize_1d needs a one-dimensional problem");
  const int k = prob.order();
  std::vector<MatrixPolynomial> p;
  p.reserve(static_cast<std::size_t>(k) + 1);
  // int M_i(i+1) h^(i) h^(i+1) = -1/2 int (M_i(i+1))' (h^(i))^2
  for (int i = 0; i < k; ++i) {
    p.push_back(0.5 * prob.diag(i) - 0.5 * prob.super(i).derivative());
  }
  p.push_back(0.5 * prob.diag(k));
  return ScalarProblem1D(k, prob.a(), prob.b(), std::move(p));
}

VariationalProblem scalar_to_band(const ScalarProblem1D& sp) {
  const int k = sp.order();
  std::vector<MatrixPolynomial> diag;
  diag.reserve(static_cast<std::size_t>(k) + 1);
  for (int l = 0; l <= k; ++l) diag.push_back(2.0 * sp.p(l));
  std::vector<MatrixPolynomial> super(static_cast<std::size_t>(k),
                                      MatrixPolynomial(1, 1));
  return VariationalProblem(k, 1, sp.a(), sp.b(), std::move(diag),
                            std::move(super));
}

RawCoefficients to_raw(const VariationalProblem& prob) {
  RawCoefficients raw;
  raw.order_k = prob.order();
  raw.dim_n = prob.dim();
  raw.a = prob.a();
  raw.b = prob.b();
  for (int i = 0; i <= prob.order(); ++i) {
    if (!prob.diag(i).is_zero()) raw.blocks[{i, i}] = prob.diag(i);
  }
  for (int i = 0; i < prob.order(); ++i) {
    if (!prob.super(i).is_zero()) raw.blocks[{i, i + 1}] = prob.super(i);
  }
  return raw;
}

}  // namespace varjacobi
