#include "aledg/limiter.hpp"

#include "aledg/errors.hpp"

#include <algorithm>
#include <limits>

namespace aledg {

LimiterKind parse_limiter_kind(const std::string& name) {
  if (name == "none") return LimiterKind::none;
  if (name == "tvd_1d" || name == "tvd") return LimiterKind::tvd_1d;
  if (name == "tvb_2d" || name == "tvb") return LimiterKind::tvb_2d;
  throw ConfigError("limiter.kind", "unknown limiter '" + name + "'");
}

std::string to_string(LimiterKind kind) {
  switch (kind) {
    case LimiterKind::none: return "none";
    case LimiterKind::tvd_1d: return "tvd_1d";
    case LimiterKind::tvb_2d: return "tvb_2d";
  }
  return "unknown";
}

double minmod(const double* values, int count) {
  const double s = values[0] > 0.0 ? 1.0 : (values[0] < 0.0 ? -1.0 : 0.0);
  if (s == 0.0) return 0.0;
  double m = std::abs(values[0]);
  for (int i = 1; i < count; ++i) {
    if (values[i] * s <= 0.0) return 0.0;
    m = std::min(m, std::abs(values[i]));
  }
  return s * m;
}

double minmod(std::initializer_list<double> values) {
  return minmod(values.begin(), static_cast<int>(values.size()));
}

double minmod_tvb(double a1, std::initializer_list<double> others, double M, double dx) {
  if (std::abs(a1) <= M * dx * dx) return a1;
  double buf[8];
  int n = 0;
  buf[n++] = a1;
  for (double v : others) buf[n++] = v;
  return minmod(buf, n);
}

Eigen::VectorXd rebalance(const Eigen::VectorXd& delta) {
  if (delta.sum() == 0.0) return delta;
  const double pos = delta.cwiseMax(0.0).sum();
  const double neg = (-delta).cwiseMax(0.0).sum();
  const double theta_p = pos > 0.0 ? std::min(1.0, neg / pos) : 1.0;
  const double theta_m = neg > 0.0 ? std::min(1.0, pos / neg) : 1.0;
  return theta_p * delta.cwiseMax(0.0) - theta_m * (-delta).cwiseMax(0.0);
}

Eigen::Matrix3d psi_basis(const Eigen::Vector2d& p0, const Eigen::Vector2d& p1, const Eigen::Vector2d& p2) {
  const std::array<Eigen::Vector2d, 3> m = {0.5 * (p1 + p2), 0.5 * (p2 + p0), 0.5 * (p0 + p1)};
  Eigen::Matrix3d sys;
  for (int j = 0; j < 3; ++j) sys.row(j) << 1.0, m[j](0), m[j](1);
  const double area = 0.5 * ((p1 - p0)(0) * (p2 - p0)(1) - (p1 - p0)(1) * (p2 - p0)(0));
  const double scale = (p1 - p0).squaredNorm() + (p2 - p0).squaredNorm();
  if (!(std::abs(area) > 1e-14 * scale)) throw DegenerateCellError("psi_basis: degenerate triangle", -1);
  // Column i of sys^{-1} solves psi_i(m_j) = delta_ij.
  return sys.inverse().transpose();
}

std::optional<ConeWeights> cone_weights(const Eigen::Vector2d& m, const Eigen::Vector2d& bc,
                                        const std::array<Eigen::Vector2d, 3>& nb) {
  std::optional<ConeWeights> best;
  const Eigen::Vector2d rhs = m - bc;
  const double tol = 1e-12;
  for (int p = 0; p < 3; ++p) {
    const int j = p;
    const int k = (p + 1) % 3;
    Eigen::Matrix2d a;
    a.col(0) = nb[j] - bc;
    a.col(1) = nb[k] - bc;
    const double det = a.determinant();
    if (std::abs(det) <= 1e-14 * a.squaredNorm()) continue;
    const Eigen::Vector2d alpha = a.inverse() * rhs;
    if (alpha(0) < -tol || alpha(1) < -tol) continue;
    if (!best || alpha.sum() < best->alpha.sum()) best = ConeWeights{j, k, alpha.cwiseMax(0.0)};
  }
  return best;
}

namespace {

double pressure_of(const Eigen::VectorXd& u, int dim, double gamma) {
  return (gamma - 1.0) * (u(dim + 1) - 0.5 * u.segment(1, dim).squaredNorm() / u(0));
}

}  // namespace

bool positivity_limit(Eigen::MatrixXd& coeffs, const Eigen::MatrixXd& phi, int dim, double gamma, double eps) {
  const double phi0 = constant_mode_value(dim);
  const Eigen::VectorXd mean = coeffs.row(0).transpose() * phi0;
  if (!(mean(0) > eps) || !(pressure_of(mean, dim, gamma) > eps))
    throw InvalidStateError("positivity_limit: cell average is not admissible");
  if (coeffs.rows() < 2) return false;

  bool changed = false;
  Eigen::MatrixXd values = phi * coeffs;
  const double rho_min = values.col(0).minCoeff();
  if (rho_min < eps) {
    const double theta = std::min(1.0, (mean(0) - eps) / (mean(0) - rho_min));
    coeffs.col(0).tail(coeffs.rows() - 1) *= theta;
    values = phi * coeffs;
    changed = true;
  }

  double theta = 1.0;
  for (int q = 0; q < values.rows(); ++q) {
    const Eigen::VectorXd uq = values.row(q).transpose();
    if (pressure_of(uq, dim, gamma) >= eps) continue;
    // Pressure is concave in the conserved variables: bisect on the segment.
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 60; ++it) {
      const double t = 0.5 * (lo + hi);
      if (pressure_of(mean + t * (uq - mean), dim, gamma) >= eps) lo = t; else hi = t;
    }
    theta = std::min(theta, lo);
  }
  if (theta < 1.0) {
    coeffs.bottomRows(coeffs.rows() - 1) *= theta;
    changed = true;
  }
  return changed;
}

}  // namespace aledg
