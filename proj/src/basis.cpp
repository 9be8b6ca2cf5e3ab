#include "aledg/basis.hpp"

#include "aledg/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace aledg {

namespace {

// Legendre P_n and P_n' at x by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

long double factorial(int n) {
  long double f = 1.0L;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Exact integral of x^a y^b over the reference element.
long double monomial_moment(int dim, int a, int b) {
  if (dim == 1) return (a % 2 == 0) ? 2.0L / (a + 1) : 0.0L;
  return factorial(a) * factorial(b) / factorial(a + b + 2);
}

}  // namespace

QuadratureRule gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1 || n > 64) throw CapabilityError("gauss_jacobi: unsupported point count " + std::to_string(n));
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
  const double ab = alpha + beta;
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + ab;
    t(k, k) = (k == 0) ? (beta - alpha) / (ab + 2.0) : (beta * beta - alpha * alpha) / (s * (s + 2.0));
    if (k + 1 < n) {
      const double m = k + 1.0;
      const double sm = 2.0 * m + ab;
      const double b = std::sqrt(4.0 * m * (m + alpha) * (m + beta) * (m + ab) /
                                 (sm * sm * (sm + 1.0) * (sm - 1.0)));
      t(k, k + 1) = b;
      t(k + 1, k) = b;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(t);
  const double mu0 = std::pow(2.0, ab + 1.0) * std::tgamma(alpha + 1.0) * std::tgamma(beta + 1.0) /
                     std::tgamma(ab + 2.0);
  QuadratureRule rule;
  rule.dim = 1;
  rule.degree = 2 * n - 1;
  rule.points = eig.eigenvalues().transpose();
  rule.weights = mu0 * eig.eigenvectors().row(0).transpose().array().square();
  return rule;
}

QuadratureRule gauss_legendre(int n) {
  QuadratureRule rule = gauss_jacobi(n, 0.0, 0.0);
  // Polish nodes to full precision; Golub-Welsch leaves O(eps * n) error.
  for (int i = 0; i < n; ++i) {
    double x = rule.points(0, i);
    for (int it = 0; it < 3; ++it) {
      const auto [p, dp] = legendre(n, x);
      x -= p / dp;
    }
    const auto [p, dp] = legendre(n, x);
    (void)p;
    rule.points(0, i) = x;
    rule.weights(i) = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

QuadratureRule gauss_legendre_unit(int n) {
  QuadratureRule rule = gauss_legendre(n);
  rule.points = (rule.points.array() + 1.0) * 0.5;
  rule.weights *= 0.5;
  return rule;
}

QuadratureRule quadrature_for(int dim, int degree) {
  if (degree < 0 || degree > kMaxQuadratureDegree)
    throw CapabilityError("quadrature_for: degree " + std::to_string(degree) + " not supported");
  const int n = degree / 2 + 1;
  if (dim == 1) {
    QuadratureRule rule = gauss_legendre(n);
    rule.degree = degree;
    return rule;
  }
  if (dim != 2) throw CapabilityError("quadrature_for: dimension " + std::to_string(dim));

  // Collapsed (Duffy) tensor rule; the (1 - b) Jacobian factor is absorbed
  // by the Gauss-Jacobi weight.
  const QuadratureRule ra = gauss_legendre(n);
  const QuadratureRule rb = gauss_jacobi(n, 1.0, 0.0);
  QuadratureRule rule;
  rule.dim = 2;
  rule.degree = degree;
  rule.points.resize(2, n * n);
  rule.weights.resize(n * n);
  int q = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double a = ra.points(0, i);
      const double b = rb.points(0, j);
      rule.points(0, q) = 0.25 * (1.0 + a) * (1.0 - b);
      rule.points(1, q) = 0.5 * (1.0 + b);
      rule.weights(q) = ra.weights(i) * rb.weights(j) / 8.0;
      ++q;
    }
  }
  return rule;
}

QuadratureRule time_quadrature(int degree) {
  if (degree < 1 || degree > 3)
    throw CapabilityError("time_quadrature: degree " + std::to_string(degree) + " not supported");
  return gauss_legendre_unit(degree);
}

BasisSet::BasisSet(int dim, int degree) : dim_(dim), degree_(degree) {
  if (dim != 1 && dim != 2) throw CapabilityError("BasisSet: dimension must be 1 or 2");
  if (degree < 0 || degree > 3) throw CapabilityError("BasisSet: degree must be in [0, 3]");
  for (int total = 0; total <= degree; ++total) {
    if (dim == 1) {
      exponents_.push_back({total, 0});
    } else {
      for (int b = 0; b <= total; ++b) exponents_.push_back({total - b, b});
    }
  }
  const int m = size();
  using MatL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  MatL gram(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      gram(i, j) = monomial_moment(dim, exponents_[i][0] + exponents_[j][0],
                                   exponents_[i][1] + exponents_[j][1]);

  // Modified Gram-Schmidt in coefficient space under the moment inner product.
  MatL c = MatL::Identity(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < i; ++j) {
      const long double proj = (c.row(i) * gram * c.row(j).transpose())(0, 0);
      c.row(i) -= proj * c.row(j);
    }
    const long double norm = std::sqrt((c.row(i) * gram * c.row(i).transpose())(0, 0));
    c.row(i) /= norm;
  }
  coeffs_ = c.cast<double>();
}

double BasisSet::monomial(const Eigen::Ref<const Eigen::VectorXd>& xi, int j) const {
  const auto& e = exponents_[j];
  double v = std::pow(xi(0), e[0]);
  if (dim_ == 2) v *= std::pow(xi(1), e[1]);
  return v;
}

double BasisSet::monomial_derivative(const Eigen::Ref<const Eigen::VectorXd>& xi, int j,
                                     int direction) const {
  const auto& e = exponents_[j];
  const int p = e[direction];
  if (p == 0) return 0.0;
  const double x = xi(0);
  if (dim_ == 1) return p * std::pow(x, p - 1);
  const double y = xi(1);
  if (direction == 0) return p * std::pow(x, p - 1) * std::pow(y, e[1]);
  return p * std::pow(x, e[0]) * std::pow(y, p - 1);
}

double BasisSet::eval(const Eigen::Ref<const Eigen::VectorXd>& xi, int m) const {
  if (m < 0 || m >= size()) throw std::out_of_range("BasisSet::eval: mode index out of range");
  double v = 0.0;
  for (int j = 0; j <= m; ++j) v += coeffs_(m, j) * monomial(xi, j);
  return v;
}

Eigen::VectorXd BasisSet::eval_grad(const Eigen::Ref<const Eigen::VectorXd>& xi, int m) const {
  if (m < 0 || m >= size()) throw std::out_of_range("BasisSet::eval_grad: mode index out of range");
  Eigen::VectorXd g = Eigen::VectorXd::Zero(dim_);
  for (int d = 0; d < dim_; ++d)
    for (int j = 0; j <= m; ++j) g(d) += coeffs_(m, j) * monomial_derivative(xi, j, d);
  return g;
}

Eigen::MatrixXd BasisSet::values(const Eigen::MatrixXd& points) const {
  Eigen::MatrixXd mono(points.cols(), size());
  for (int q = 0; q < points.cols(); ++q)
    for (int j = 0; j < size(); ++j) mono(q, j) = monomial(points.col(q), j);
  return mono * coeffs_.transpose();
}

Eigen::MatrixXd BasisSet::derivatives(const Eigen::MatrixXd& points, int direction) const {
  Eigen::MatrixXd mono(points.cols(), size());
  for (int q = 0; q < points.cols(); ++q)
    for (int j = 0; j < size(); ++j) mono(q, j) = monomial_derivative(points.col(q), j, direction);
  return mono * coeffs_.transpose();
}

AffineMap AffineMap::interval(double left, double right) {
  AffineMap map;
  map.origin = Eigen::VectorXd::Constant(1, 0.5 * (left + right));
  map.jacobian = Eigen::MatrixXd::Constant(1, 1, 0.5 * (right - left));
  return map;
}

AffineMap AffineMap::triangle(const Eigen::Vector2d& p0, const Eigen::Vector2d& p1,
                              const Eigen::Vector2d& p2) {
  AffineMap map;
  map.origin = p0;
  map.jacobian.resize(2, 2);
  map.jacobian.col(0) = p1 - p0;
  map.jacobian.col(1) = p2 - p0;
  return map;
}

}  // namespace aledg
