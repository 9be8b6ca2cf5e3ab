#pragma once

#include "aledg/euler.hpp"
#include "aledg/flux.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace aledg {

/// Compressible Euler equations behind the solver interface.
template <int Dim>
struct EulerPhysics {
  static constexpr int dim = Dim;
  static constexpr int nvar = Dim + 2;
  static constexpr bool is_euler = true;
  using State = Eigen::Matrix<double, nvar, 1>;
  using Matrix = Eigen::Matrix<double, nvar, nvar>;
  using Point = Vec<Dim>;

  EosParams eos;
  FluxSpec flux;

  State ale_flux(const State& u, const Point& w, const Point& n) const { return aledg::ale_flux<Dim>(u, w, n, eos); }
  State numerical_flux(const State& ul, const State& ur, const Point& w, const Point& n) const {
    return aledg::numerical_flux<Dim>(ul, ur, w, n, flux, eos);
  }
  Matrix jacobian(const State& u, const Point& n) const { return flux_jacobian<Dim>(u, n, eos); }
  /// Right and left eigenvectors of the directional Jacobian.
  std::pair<Matrix, Matrix> eigenvectors(const State& u, const Point& n) const {
    auto es = eigen_decomposition<Dim>(u, n, eos);
    return {es.R, es.R_inv};
  }
  Point velocity(const State& u) const { return u.template segment<Dim>(1) / u(0); }
  double sound_speed(const State& u) const {
    return std::sqrt(eos.gamma * std::max(pressure<Dim>(u, eos), 0.0) / u(0));
  }
  double density(const State& u) const { return u(0); }
  double pressure_of(const State& u) const { return pressure<Dim>(u, eos); }
  bool admissible(const State& u) const {
    return std::isfinite(u.sum()) && u(0) > 0.0 && pressure<Dim>(u, eos) > 0.0;
  }
  /// Mirror state across a wall with unit normal n.
  State reflect(const State& u, const Point& n) const {
    State r = u;
    const Point m = u.template segment<Dim>(1);
    r.template segment<Dim>(1) = m - 2.0 * m.dot(n) * n;
    return r;
  }
};

/// Scalar linear advection u_t + a . grad u = 0 with the upwind flux.
template <int Dim>
struct AdvectionPhysics {
  static constexpr int dim = Dim;
  static constexpr int nvar = 1;
  static constexpr bool is_euler = false;
  using State = Eigen::Matrix<double, 1, 1>;
  using Matrix = Eigen::Matrix<double, 1, 1>;
  using Point = Vec<Dim>;

  Point a = Point::Ones();

  State ale_flux(const State& u, const Point& w, const Point& n) const { return State((a - w).dot(n) * u(0)); }
  State numerical_flux(const State& ul, const State& ur, const Point& w, const Point& n) const {
    const double s = (a - w).dot(n);
    return State(s * (s >= 0.0 ? ul(0) : ur(0)));
  }
  Matrix jacobian(const State&, const Point& n) const { return Matrix(a.dot(n)); }
  std::pair<Matrix, Matrix> eigenvectors(const State&, const Point&) const {
    return {Matrix::Identity(), Matrix::Identity()};
  }
  Point velocity(const State&) const { return a; }
  double sound_speed(const State&) const { return 0.0; }
  bool admissible(const State& u) const { return std::isfinite(u(0)); }
  State reflect(const State& u, const Point&) const { return u; }
};

}  // namespace aledg
