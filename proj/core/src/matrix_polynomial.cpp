#include "varjacobi/matrix_polynomial.hpp"

#include <cstddef>
#include <stdexcept>

namespace varjacobi {

MatrixPolynomial::MatrixPolynomial(Eigen::Index rows, Eigen::Index cols)
    : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative shape");
}

MatrixPolynomial::MatrixPolynomial(const Eigen::MatrixXd& constant)
    : rows_(constant.rows()), cols_(constant.cols()), coeffs_{constant} {
  normalize();
}

MatrixPolynomial::MatrixPolynomial(Eigen::Index rows, Eigen::Index cols,
                                   std::vector<Eigen::MatrixXd> coeffs)
    : rows_(rows), cols_(cols), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) {
    if (c.rows() != rows_ || c.cols() != cols_)
      throw std::invalid_argument("coefficient shape mismatch");
  }
  normalize();
}

MatrixPolynomial MatrixPolynomial::identity(Eigen::Index n) {
  return MatrixPolynomial(Eigen::MatrixXd::Identity(n, n));
}

MatrixPolynomial MatrixPolynomial::scalar(std::initializer_list<double> coeffs) {
  return scalar(std::vector<double>(coeffs));
}

MatrixPolynomial MatrixPolynomial::scalar(const std::vector<double>& coeffs) {
  std::vector<Eigen::MatrixXd> cs;
  cs.reserve(coeffs.size());
  for (double c : coeffs) cs.push_back(Eigen::MatrixXd::Constant(1, 1, c));
  return MatrixPolynomial(1, 1, std::move(cs));
}

Eigen::MatrixXd MatrixPolynomial::coeff(int d) const {
  if (d < 0) throw std::invalid_argument("negative degree");
  if (d >= static_cast<int>(coeffs_.size()))
    return Eigen::MatrixXd::Zero(rows_, cols_);
  return coeffs_[static_cast<std::size_t>(d)];
}

Eigen::MatrixXd MatrixPolynomial::eval(double t) const {
  if (coeffs_.empty()) return Eigen::MatrixXd::Zero(rows_, cols_);
  Eigen::MatrixXd acc = coeffs_.back();
  for (std::size_t i = coeffs_.size() - 1; i-- > 0;) {
    acc = t * acc + coeffs_[i];
  }
  return acc;
}

MatrixPolynomial MatrixPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return MatrixPolynomial(rows_, cols_);
  std::vector<Eigen::MatrixXd> out;
  out.reserve(coeffs_.size() - 1);
  for (std::size_t d = 1; d < coeffs_.size(); ++d) {
    out.push_back(static_cast<double>(d) * coeffs_[d]);
  }
  return MatrixPolynomial(rows_, cols_, std::move(out));
}

MatrixPolynomial MatrixPolynomial::transpose() const {
  std::vector<Eigen::MatrixXd> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.transpose());
  return MatrixPolynomial(cols_, rows_, std::move(out));
}

bool MatrixPolynomial::is_symmetric(double tol) const {
  if (rows_ != cols_) return false;
  for (const auto& c : coeffs_) {
    if ((c - c.transpose()).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

double MatrixPolynomial::max_coeff_norm() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, c.cwiseAbs().maxCoeff());
  return m;
}

MatrixPolynomial MatrixPolynomial::operator+(const MatrixPolynomial& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("shape mismatch in +");
  std::vector<Eigen::MatrixXd> out;
  std::size_t m = std::max(coeffs_.size(), o.coeffs_.size());
  out.reserve(m);
  for (std::size_t d = 0; d < m; ++d) {
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(rows_, cols_);
    if (d < coeffs_.size()) c += coeffs_[d];
    if (d < o.coeffs_.size()) c += o.coeffs_[d];
    out.push_back(std::move(c));
  }
  return MatrixPolynomial(rows_, cols_, std::move(out));
}

MatrixPolynomial MatrixPolynomial::operator-(const MatrixPolynomial& o) const {
  return *this + (-o);
}

MatrixPolynomial MatrixPolynomial::operator*(const MatrixPolynomial& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("shape mismatch in *");
  if (coeffs_.empty() || o.coeffs_.empty())
    return MatrixPolynomial(rows_, o.cols_);
  std::vector<Eigen::MatrixXd> out(
      coeffs_.size() + o.coeffs_.size() - 1,
      Eigen::MatrixXd::Zero(rows_, o.cols_));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
      out[i + j] += coeffs_[i] * o.coeffs_[j];
    }
  }
  return MatrixPolynomial(rows_, o.cols_, std::move(out));
}

MatrixPolynomial MatrixPolynomial::operator-() const {
  std::vector<Eigen::MatrixXd> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(-c);
  return MatrixPolynomial(rows_, cols_, std::move(out));
}

MatrixPolynomial& MatrixPolynomial::operator+=(const MatrixPolynomial& o) {
  *this = *this + o;
  return *this;
}

bool MatrixPolynomial::operator==(const MatrixPolynomial& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  if (coeffs_.size() != o.coeffs_.size()) return false;
  for (std::size_t d = 0; d < coeffs_.size(); ++d) {
    if (coeffs_[d] != o.coeffs_[d]) return false;
  }
  return true;
}

MatrixPolynomial operator*(double s, const MatrixPolynomial& p) {
  std::vector<Eigen::MatrixXd> out;
  out.reserve(p.coeffs_.size());
  for (const auto& c : p.coeffs_) out.push_back(s * c);
  return MatrixPolynomial(p.rows_, p.cols_, std::move(out));
}

void MatrixPolynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back().isZero(0.0)) coeffs_.pop_back();
}

Eigen::MatrixXd poly_eval(const MatrixPolynomial& p, double t) {
  return p.eval(t);
}

MatrixPolynomial poly_derivative(const MatrixPolynomial& p) {
  return p.derivative();
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  // arguments stay far below the 2^53 exactness limit here
  return std::round(r);
}

}  // namespace varjacobi
