#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <vector>

namespace aledg {

/// Points (dim x n, one column per node) and positive weights of a rule.
///
/// 1D rules live on [-1, 1] unless built with `gauss_legendre_unit`; 2D rules
/// live on the unit right triangle (0,0), (1,0), (0,1).
struct QuadratureRule {
  int dim = 1;
  int degree = 0;
  Eigen::MatrixXd points;
  Eigen::VectorXd weights;

  int size() const { return static_cast<int>(weights.size()); }
};

inline constexpr int kMaxQuadratureDegree = 21;

/// n-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int n);

/// n-point Gauss-Legendre rule on [0, 1]; weights sum to 1.
QuadratureRule gauss_legendre_unit(int n);

/// n-point Gauss-Jacobi rule on [-1, 1] for the weight (1-x)^alpha (1+x)^beta.
QuadratureRule gauss_jacobi(int n, double alpha, double beta);

/// Rule on the reference element of `dim` that integrates polynomials of
/// total degree `degree` exactly. Throws CapabilityError beyond the supported
/// range.
QuadratureRule quadrature_for(int dim, int degree);

/// Time rule on [0, 1] paired with the predictor of a degree-k scheme:
/// midpoint for k = 1, 2- and 3-point Gauss-Legendre for k = 2, 3.
QuadratureRule time_quadrature(int degree);

/// Orthonormal modal basis on the reference element.
///
/// Built by Gram-Schmidt on monomials ordered by total degree, in long double
/// with exact monomial moments. Mode 0 is the constant; in 2D modes 1 and 2
/// span the linear part.
class BasisSet {
 public:
  BasisSet(int dim, int degree);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  int size() const { return static_cast<int>(exponents_.size()); }

  double eval(const Eigen::Ref<const Eigen::VectorXd>& xi, int m) const;
  Eigen::VectorXd eval_grad(const Eigen::Ref<const Eigen::VectorXd>& xi, int m) const;

  /// Values of every mode at every point: (n_points x n_modes).
  Eigen::MatrixXd values(const Eigen::MatrixXd& points) const;
  /// d/dxi_direction of every mode at every point: (n_points x n_modes).
  Eigen::MatrixXd derivatives(const Eigen::MatrixXd& points, int direction) const;

  /// Monomial coefficient table, row m holds the coefficients of mode m.
  const Eigen::MatrixXd& coefficients() const { return coeffs_; }
  const std::vector<std::array<int, 2>>& exponents() const { return exponents_; }

  static int modes_for(int dim, int degree) {
    return dim == 1 ? degree + 1 : (degree + 1) * (degree + 2) / 2;
  }

 private:
  double monomial(const Eigen::Ref<const Eigen::VectorXd>& xi, int j) const;
  double monomial_derivative(const Eigen::Ref<const Eigen::VectorXd>& xi, int j, int direction) const;

  int dim_;
  int degree_;
  std::vector<std::array<int, 2>> exponents_;
  Eigen::MatrixXd coeffs_;
};

/// Per-cell coefficient matrices (n_modes x n_vars) in the reference
/// orthonormal basis: u(x) = sum_m u_m phi_m(xi(x)).
using ModalSolution = std::vector<Eigen::MatrixXd>;

/// Value of the constant mode; the cell average of u is coeffs.row(0) * phi0.
inline double constant_mode_value(int dim) { return dim == 1 ? 1.0 / std::sqrt(2.0) : std::sqrt(2.0); }

/// Measure of the reference element.
inline double reference_measure(int dim) { return dim == 1 ? 2.0 : 0.5; }

/// x = origin + jacobian * xi.
struct AffineMap {
  Eigen::VectorXd origin;
  Eigen::MatrixXd jacobian;

  Eigen::VectorXd operator()(const Eigen::Ref<const Eigen::VectorXd>& xi) const {
    return origin + jacobian * xi;
  }
  double det() const { return jacobian.determinant(); }

  /// Map of the interval [left, right] from [-1, 1].
  static AffineMap interval(double left, double right);
  /// Map of the triangle (p0, p1, p2) from the unit right triangle.
  static AffineMap triangle(const Eigen::Vector2d& p0, const Eigen::Vector2d& p1,
                            const Eigen::Vector2d& p2);
};

/// L2 projection of a pointwise function onto the orthonormal basis of one
/// cell. `f` maps a physical point to a state vector of length `nvar`.
/// Returns the (n_modes x nvar) coefficient matrix.
template <class Fn>
Eigen::MatrixXd project(const BasisSet& basis, const AffineMap& map, Fn&& f, int nvar,
                        const QuadratureRule& rule) {
  Eigen::MatrixXd phi = basis.values(rule.points);
  Eigen::MatrixXd coeffs = Eigen::MatrixXd::Zero(basis.size(), nvar);
  for (int q = 0; q < rule.size(); ++q) {
    Eigen::VectorXd value = f(map(rule.points.col(q)));
    coeffs += rule.weights(q) * phi.row(q).transpose() * value.transpose();
  }
  return coeffs;
}

template <class Fn>
Eigen::MatrixXd project(const BasisSet& basis, const AffineMap& map, Fn&& f, int nvar) {
  return project(basis, map, std::forward<Fn>(f), nvar,
                 quadrature_for(basis.dim(), 2 * basis.degree() + 2));
}

}  // namespace aledg
