#include "varjacobi/jet.hpp"

#include <stdexcept>

namespace varjacobi {

MatrixJet poly_jet(const MatrixPolynomial& p, double t, int order) {
  if (order < 0) throw std::invalid_argument("negative jet order");
  MatrixJet out;
  out.reserve(static_cast<std::size_t>(order) + 1);
  MatrixPolynomial cur = p;
  for (int j = 0; j <= order; ++j) {
    out.push_back(cur.eval(t));
    cur = cur.derivative();
  }
  return out;
}

JetVector poly_vector_jet(const MatrixPolynomial& p, double t, int order) {
  if (p.cols() != 1) throw std::invalid_argument("expected a column polynomial");
  JetVector jv;
  for (auto& m : poly_jet(p, t, order)) {
    jv.entries.push_back(Eigen::VectorXd(m.col(0)));
  }
  return jv;
}

MatrixJet jet_transpose(const MatrixJet& a) {
  MatrixJet out;
  out.reserve(a.size());
  for (const auto& m : a) out.push_back(m.transpose());
  return out;
}

MatrixJet jet_add(const MatrixJet& a, const MatrixJet& b) {
  std::size_t m = std::min(a.size(), b.size());
  MatrixJet out;
  out.reserve(m);
  for (std::size_t j = 0; j < m; ++j) out.push_back(a[j] + b[j]);
  return out;
}

MatrixJet jet_sub(const MatrixJet& a, const MatrixJet& b) {
  std::size_t m = std::min(a.size(), b.size());
  MatrixJet out;
  out.reserve(m);
  for (std::size_t j = 0; j < m; ++j) out.push_back(a[j] - b[j]);
  return out;
}

MatrixJet jet_neg(const MatrixJet& a) {
  MatrixJet out;
  out.reserve(a.size());
  for (const auto& m : a) out.push_back(-m);
  return out;
}

MatrixJet jet_product(const MatrixJet& a, const MatrixJet& b) {
  if (a.empty() || b.empty()) return {};
  std::size_t m = std::min(a.size(), b.size());
  MatrixJet out;
  out.reserve(m);
  for (std::size_t d = 0; d < m; ++d) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(a[0].rows(), b[0].cols());
    for (std::size_t j = 0; j <= d; ++j) {
      s += binomial(static_cast<int>(d), static_cast<int>(j)) * a[j] *
           b[d - j];
    }
    out.push_back(std::move(s));
  }
  return out;
}

MatrixJet jet_inverse(const MatrixJet& a) {
  if (a.empty()) throw std::invalid_argument("empty jet");
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a[0]);
  MatrixJet out;
  out.reserve(a.size());
  out.push_back(lu.inverse());
  // (a * inv)^(m) = 0 for m >= 1, solved for inv^(m)
  for (std::size_t m = 1; m < a.size(); ++m) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(a[0].rows(), a[0].cols());
    for (std::size_t j = 1; j <= m; ++j) {
      s += binomial(static_cast<int>(m), static_cast<int>(j)) * a[j] *
           out[m - j];
    }
    out.push_back(-out[0] * s);
  }
  return out;
}

}  // namespace varjacobi
