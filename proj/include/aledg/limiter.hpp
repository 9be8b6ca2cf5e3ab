#pragma once

#include "aledg/basis.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace aledg {

enum class LimiterKind { none, tvd_1d, tvb_2d };

LimiterKind parse_limiter_kind(const std::string& name);
std::string to_string(LimiterKind kind);

struct LimiterConfig {
  LimiterKind kind = LimiterKind::none;
  double M = 0.0;
  double nu = 1.5;
  double eps_skip = 1e-12;
  bool positivity = false;
  bool characteristic = true;
  double eps_pos = 1e-13;
};

/// s min |a_i| when every a_i has sign s, else 0.
double minmod(std::initializer_list<double> values);
double minmod(const double* values, int count);

/// TVB-modified minmod: returns a1 untouched when |a1| <= M dx^2.
double minmod_tvb(double a1, std::initializer_list<double> others, double M, double dx);

/// Redistribute midpoint increments so they sum to zero (pos/neg scaling).
/// Increments that already sum to zero are returned unchanged.
Eigen::VectorXd rebalance(const Eigen::VectorXd& delta);

/// Coefficients a_i of the linear functions psi_i(x, y) = a_i . (1, x, y)
/// with psi_i(m_j) = delta_ij, where m_j is the midpoint of the face opposite
/// vertex j. Row i of the result holds a_i. Throws DegenerateCellError for a
/// degenerate triangle.
Eigen::Matrix3d psi_basis(const Eigen::Vector2d& p0, const Eigen::Vector2d& p1, const Eigen::Vector2d& p2);

/// Neighbour-cone coefficients for one face midpoint: the pair (j, k) of
/// neighbour barycentres and alpha >= 0 with
/// m - b_c = alpha_0 (b_j - b_c) + alpha_1 (b_k - b_c). Among admissible
/// pairs the smallest alpha sum wins. Empty when no pair is admissible.
struct ConeWeights {
  int j = -1;
  int k = -1;
  Eigen::Vector2d alpha = Eigen::Vector2d::Zero();
};
std::optional<ConeWeights> cone_weights(const Eigen::Vector2d& m, const Eigen::Vector2d& bc,
                                        const std::array<Eigen::Vector2d, 3>& neighbours);

/// Inputs of the slope limiter at one face midpoint of a cell.
template <class State, class Point>
struct FaceSlope {
  State u_tilde;  // linear-part value at the midpoint minus the cell average
  State du_bar;   // neighbour-average increment
  Point direction;
};

/// Core of the TVB limiter for one cell. Returns the limited midpoint
/// increments, or nothing when every face passes the no-op test.
template <class Physics>
std::optional<std::vector<typename Physics::State>> limit_increments(
    const Physics& phys, const typename Physics::State& mean,
    const std::vector<FaceSlope<typename Physics::State, typename Physics::Point>>& faces,
    const LimiterConfig& cfg, double dx) {
  using State = typename Physics::State;
  constexpr int N = Physics::nvar;
  const int nf = static_cast<int>(faces.size());
  std::vector<State> delta(nf);
  bool active = false;
  for (int i = 0; i < nf; ++i) {
    State a = faces[i].u_tilde;
    State b = cfg.nu * faces[i].du_bar;
    typename Physics::Matrix R = Physics::Matrix::Identity();
    if (cfg.characteristic && N > 1) {
      const auto [r, r_inv] = phys.eigenvectors(mean, faces[i].direction);
      R = r;
      a = r_inv * a;
      b = r_inv * b;
    }
    State lim;
    for (int c = 0; c < N; ++c) lim(c) = minmod_tvb(a(c), {b(c)}, cfg.M, dx);
    delta[i] = R * lim;
    for (int c = 0; c < N; ++c)
      if (std::abs(faces[i].u_tilde(c) - delta[i](c)) >= cfg.eps_skip * (1.0 + std::abs(mean(c)))) active = true;
  }
  if (!active) return std::nullopt;
  for (int c = 0; c < N; ++c) {
    Eigen::VectorXd d(nf);
    for (int i = 0; i < nf; ++i) d(i) = delta[i](c);
    d = rebalance(d);
    for (int i = 0; i < nf; ++i) delta[i](c) = d(i);
  }
  return delta;
}

/// Zhang-Shu scaling of the non-constant modes so that density and pressure
/// at the given points (basis values, n_points x n_modes) stay >= eps.
/// `dim` selects the Euler layout (rho, m_1..m_dim, E). Returns true when
/// the polynomial changed. Throws InvalidStateError when the cell mean is
/// itself inadmissible.
bool positivity_limit(Eigen::MatrixXd& coeffs, const Eigen::MatrixXd& phi, int dim, double gamma,
                      double eps);

}  // namespace aledg
