#include "aledg/dissipation.hpp"

#include "aledg/basis.hpp"
#include "aledg/errors.hpp"

#include <cmath>

namespace aledg {

Eigen::MatrixXd linear_dissipation_operator(const Mesh1D& mesh, double a, double w, int degree) {
  if (!mesh.periodic()) throw ConfigError("mesh", "dissipation operator needs a periodic mesh");
  const int n = mesh.num_cells();
  const double h = mesh.length(0);
  for (int c = 1; c < n; ++c)
    if (std::abs(mesh.length(c) - h) > 1e-12 * h) throw ConfigError("mesh", "dissipation operator needs a uniform mesh");

  const BasisSet basis(1, degree);
  const int m = basis.size();
  const QuadratureRule rule = gauss_legendre(degree + 1);
  const Eigen::MatrixXd phi = basis.values(rule.points);
  const Eigen::MatrixXd dphi = basis.derivatives(rule.points, 0);
  // S(i, j) = int phi_i' phi_j over [-1, 1].
  const Eigen::MatrixXd S = dphi.transpose() * rule.weights.asDiagonal() * phi;
  Eigen::MatrixXd ends(1, 2);
  ends << -1.0, 1.0;
  const Eigen::MatrixXd trace = basis.values(ends);
  const Eigen::RowVectorXd left = trace.row(0), right = trace.row(1);

  // Upwind side: the left neighbour when a >= w, the right one otherwise.
  const bool forward = a - w >= 0.0;
  const Eigen::RowVectorXd out = forward ? right : left;
  const Eigen::RowVectorXd in = forward ? left : right;
  const double sign = forward ? 1.0 : -1.0;
  const Eigen::MatrixXd diag = (2.0 / h) * (sign * out.transpose() * out - S);
  const Eigen::MatrixXd off = -(2.0 / h) * sign * in.transpose() * out;

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n * m, n * m);
  for (int c = 0; c < n; ++c) {
    const int up = forward ? (c + n - 1) % n : (c + 1) % n;
    A.block(c * m, c * m, m, m) += diag;
    A.block(c * m, up * m, m, m) += off;
  }
  return A;
}

Eigen::VectorXd stack_modes(const ModalSolution& u) {
  Eigen::Index size = 0;
  for (const auto& c : u) size += c.rows();
  Eigen::VectorXd v(size);
  Eigen::Index i = 0;
  for (const auto& c : u) {
    v.segment(i, c.rows()) = c.col(0);
    i += c.rows();
  }
  return v;
}

}  // namespace aledg
