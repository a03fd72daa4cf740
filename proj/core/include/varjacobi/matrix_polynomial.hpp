#pragma once

#include <Eigen/Dense>

#include <initializer_list>
#include <vector>

namespace varjacobi {

// Matrix with polynomial entries in a scalar parameter t, stored as a list of
// constant coefficient matrices indexed by degree. Trailing zero coefficients
// are trimmed on construction, so degree() is minimal; the zero polynomial
// keeps its shape but has an empty coefficient list and degree() == -1.
class MatrixPolynomial {
 public:
  MatrixPolynomial() = default;
  MatrixPolynomial(Eigen::Index rows, Eigen::Index cols);
  explicit MatrixPolynomial(const Eigen::MatrixXd& constant);
  MatrixPolynomial(Eigen::Index rows, Eigen::Index cols,
                   std::vector<Eigen::MatrixXd> coeffs);

  static MatrixPolynomial identity(Eigen::Index n);
  // 1x1 polynomial from scalar coefficients, lowest degree first.
  static MatrixPolynomial scalar(std::initializer_list<double> coeffs);
  static MatrixPolynomial scalar(const std::vector<double>& coeffs);

  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Eigen::MatrixXd>& coeffs() const { return coeffs_; }
  // Coefficient of t^d; a zero matrix beyond the stored degree.
  Eigen::MatrixXd coeff(int d) const;

  Eigen::MatrixXd eval(double t) const;  // Horner
  MatrixPolynomial derivative() const;   // exact formal derivative
  MatrixPolynomial transpose() const;
  bool is_symmetric(double tol = 0.0) const;
  double max_coeff_norm() const;

  MatrixPolynomial operator+(const MatrixPolynomial& o) const;
  MatrixPolynomial operator-(const MatrixPolynomial& o) const;
  MatrixPolynomial operator*(const MatrixPolynomial& o) const;
  MatrixPolynomial operator-() const;
  MatrixPolynomial& operator+=(const MatrixPolynomial& o);
  bool operator==(const MatrixPolynomial& o) const;

  friend MatrixPolynomial operator*(double s, const MatrixPolynomial& p);

 private:
  Eigen::Index rows_ = 0;
  Eigen::Index cols_ = 0;
  std::vector<Eigen::MatrixXd> coeffs_;

  void normalize();
};

Eigen::MatrixXd poly_eval(const MatrixPolynomial& p, double t);
MatrixPolynomial poly_derivative(const MatrixPolynomial& p);

// Exact for the small arguments used here (n well below 50).
double binomial(int n, int k);

}  // namespace varjacobi
