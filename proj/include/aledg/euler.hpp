#pragma once

#include "aledg/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <vector>

namespace aledg {

struct EosParams {
  double gamma = 1.4;

  explicit EosParams(double g = 1.4) : gamma(g) {
    if (!(g > 1.0)) throw ConfigError("gamma", "ratio of specific heats must exceed 1");
  }
};

template <int Dim, typename Scalar = double>
using Vec = Eigen::Matrix<Scalar, Dim, 1>;

/// Conserved Euler state (rho, rho*v, E).
template <int Dim, typename Scalar = double>
using ConservedState = Eigen::Matrix<Scalar, Dim + 2, 1>;

/// Primitive Euler state (rho, v, p). Construction through `make` enforces
/// rho > 0 and p > 0.
template <int Dim, typename Scalar = double>
struct PrimitiveState {
  Scalar rho{1};
  Vec<Dim, Scalar> vel = Vec<Dim, Scalar>::Zero();
  Scalar p{1};

  static PrimitiveState make(Scalar rho, const Vec<Dim, Scalar>& vel, Scalar p) {
    if (!(rho > 0)) throw InvalidStateError("non-positive density " + std::to_string(double(rho)));
    if (!(p > 0)) throw InvalidStateError("non-positive pressure " + std::to_string(double(p)));
    return PrimitiveState{rho, vel, p};
  }
};

inline PrimitiveState<1> prim1(double rho, double v, double p) {
  return PrimitiveState<1>::make(rho, Vec<1>::Constant(v), p);
}
inline PrimitiveState<2> prim2(double rho, double vx, double vy, double p) {
  return PrimitiveState<2>::make(rho, Vec<2>(vx, vy), p);
}

template <int Dim, typename Scalar>
ConservedState<Dim, Scalar> prim_to_cons(const PrimitiveState<Dim, Scalar>& w, const EosParams& eos) {
  if (!(w.rho > 0) || !(w.p > 0)) throw InvalidStateError("prim_to_cons: invalid primitive state");
  ConservedState<Dim, Scalar> u;
  u(0) = w.rho;
  u.template segment<Dim>(1) = w.rho * w.vel;
  u(Dim + 1) = w.p / (eos.gamma - 1) + Scalar(0.5) * w.rho * w.vel.squaredNorm();
  return u;
}

/// Pressure of a conserved state without validity checks.
template <int Dim, typename Scalar>
Scalar pressure(const ConservedState<Dim, Scalar>& u, const EosParams& eos) {
  return (eos.gamma - 1) * (u(Dim + 1) - Scalar(0.5) * u.template segment<Dim>(1).squaredNorm() / u(0));
}

template <int Dim, typename Scalar>
PrimitiveState<Dim, Scalar> cons_to_prim(const ConservedState<Dim, Scalar>& u, const EosParams& eos) {
  if (!(u(0) > 0)) throw InvalidStateError("cons_to_prim: non-positive density");
  const Scalar p = pressure<Dim>(u, eos);
  if (!(p > 0)) {
    std::vector<double> s(u.data(), u.data() + u.size());
    throw NegativePressureError("cons_to_prim: non-positive pressure " + std::to_string(double(p)), s);
  }
  return PrimitiveState<Dim, Scalar>{u(0), u.template segment<Dim>(1) / u(0), p};
}

template <int Dim, typename Scalar>
Scalar sound_speed(const PrimitiveState<Dim, Scalar>& w, const EosParams& eos) {
  return std::sqrt(eos.gamma * w.p / w.rho);
}

/// F(u) . n for a unit vector n.
template <int Dim, typename Scalar>
ConservedState<Dim, Scalar> physical_flux(const ConservedState<Dim, Scalar>& u, const Vec<Dim, Scalar>& n,
                                          const EosParams& eos) {
  const Scalar p = pressure<Dim>(u, eos);
  const Vec<Dim, Scalar> v = u.template segment<Dim>(1) / u(0);
  const Scalar vn = v.dot(n);
  ConservedState<Dim, Scalar> f;
  f(0) = u(0) * vn;
  f.template segment<Dim>(1) = u.template segment<Dim>(1) * vn + p * n;
  f(Dim + 1) = (u(Dim + 1) + p) * vn;
  return f;
}

/// Directional flux Jacobian dF(u).n/du.
template <int Dim, typename Scalar>
Eigen::Matrix<Scalar, Dim + 2, Dim + 2> flux_jacobian(const ConservedState<Dim, Scalar>& u,
                                                      const Vec<Dim, Scalar>& n, const EosParams& eos) {
  const Scalar g1 = eos.gamma - 1;
  const Vec<Dim, Scalar> v = u.template segment<Dim>(1) / u(0);
  const Scalar q2 = v.squaredNorm();
  const Scalar vn = v.dot(n);
  const Scalar p = pressure<Dim>(u, eos);
  const Scalar h = (u(Dim + 1) + p) / u(0);
  Eigen::Matrix<Scalar, Dim + 2, Dim + 2> a = Eigen::Matrix<Scalar, Dim + 2, Dim + 2>::Zero();
  for (int j = 0; j < Dim; ++j) a(0, 1 + j) = n(j);
  for (int i = 0; i < Dim; ++i) {
    a(1 + i, 0) = Scalar(0.5) * g1 * q2 * n(i) - v(i) * vn;
    for (int j = 0; j < Dim; ++j)
      a(1 + i, 1 + j) = v(i) * n(j) - g1 * v(j) * n(i) + (i == j ? vn : Scalar(0));
    a(1 + i, Dim + 1) = g1 * n(i);
  }
  a(Dim + 1, 0) = vn * (Scalar(0.5) * g1 * q2 - h);
  for (int j = 0; j < Dim; ++j) a(Dim + 1, 1 + j) = h * n(j) - g1 * v(j) * vn;
  a(Dim + 1, Dim + 1) = eos.gamma * vn;
  return a;
}

template <int Dim, typename Scalar = double>
struct Eigensystem {
  Eigen::Matrix<Scalar, Dim + 2, Dim + 2> R;
  Eigen::Matrix<Scalar, Dim + 2, Dim + 2> R_inv;
  Eigen::Matrix<Scalar, Dim + 2, 1> lambda;
};

/// Right/left eigenvectors of the directional flux Jacobian. Eigenvalues are
/// ordered (vn - c, vn, [vn], vn + c); in 2D the shear mode uses the tangent
/// t = (-n_y, n_x).
template <int Dim, typename Scalar>
Eigensystem<Dim, Scalar> eigen_decomposition(const ConservedState<Dim, Scalar>& u, const Vec<Dim, Scalar>& n,
                                             const EosParams& eos) {
  constexpr int N = Dim + 2;
  const auto w = cons_to_prim<Dim>(u, eos);
  const Scalar c = sound_speed(w, eos);
  const Vec<Dim, Scalar>& v = w.vel;
  const Scalar vn = v.dot(n);
  const Scalar q2 = v.squaredNorm();
  const Scalar h = (u(N - 1) + w.p) / w.rho;
  const Scalar b1 = (eos.gamma - 1) / (c * c);
  const Scalar b2 = Scalar(0.5) * b1 * q2;

  Eigensystem<Dim, Scalar> es;
  es.R.setZero();
  es.R_inv.setZero();
  const int acoustic_right = N - 1;

  es.R(0, 0) = 1;
  es.R.template block<Dim, 1>(1, 0) = v - c * n;
  es.R(N - 1, 0) = h - c * vn;
  es.R(0, 1) = 1;
  es.R.template block<Dim, 1>(1, 1) = v;
  es.R(N - 1, 1) = Scalar(0.5) * q2;
  es.R(0, acoustic_right) = 1;
  es.R.template block<Dim, 1>(1, acoustic_right) = v + c * n;
  es.R(N - 1, acoustic_right) = h + c * vn;

  es.R_inv(0, 0) = Scalar(0.5) * (b2 + vn / c);
  es.R_inv.template block<1, Dim>(0, 1) = Scalar(0.5) * (-b1 * v - n / c).transpose();
  es.R_inv(0, N - 1) = Scalar(0.5) * b1;
  es.R_inv(1, 0) = 1 - b2;
  es.R_inv.template block<1, Dim>(1, 1) = (b1 * v).transpose();
  es.R_inv(1, N - 1) = -b1;
  es.R_inv(acoustic_right, 0) = Scalar(0.5) * (b2 - vn / c);
  es.R_inv.template block<1, Dim>(acoustic_right, 1) = Scalar(0.5) * (-b1 * v + n / c).transpose();
  es.R_inv(acoustic_right, N - 1) = Scalar(0.5) * b1;

  es.lambda(0) = vn - c;
  es.lambda(1) = vn;
  es.lambda(acoustic_right) = vn + c;

  if constexpr (Dim == 2) {
    const Vec<2, Scalar> t(-n(1), n(0));
    es.R(0, 2) = 0;
    es.R.template block<2, 1>(1, 2) = t;
    es.R(3, 2) = v.dot(t);
    es.R_inv(2, 0) = -v.dot(t);
    es.R_inv.template block<1, 2>(2, 1) = t.transpose();
    es.R_inv(2, 3) = 0;
    es.lambda(2) = vn;
  }
  return es;
}

/// Self-similar solution of the Euler Riemann problem along the normal
/// direction (1D states).
class ExactRiemann {
 public:
  ExactRiemann(const PrimitiveState<1>& left, const PrimitiveState<1>& right, const EosParams& eos);

  /// State at similarity coordinate xi = x / t.
  PrimitiveState<1> sample(double xi) const;

  double p_star() const { return p_star_; }
  double u_star() const { return u_star_; }
  bool left_is_shock() const { return p_star_ > left_.p; }
  bool right_is_shock() const { return p_star_ > right_.p; }
  /// Shock speed of the left/right wave; only meaningful when that wave is a shock.
  double left_shock_speed() const;
  double right_shock_speed() const;
  double rho_star_left() const;
  double rho_star_right() const;

 private:
  double pressure_function(double p, const PrimitiveState<1>& s, double c, double& derivative) const;

  PrimitiveState<1> left_, right_;
  double gamma_;
  double c_left_, c_right_;
  double p_star_ = 0.0;
  double u_star_ = 0.0;
};

/// Convenience wrapper: sample the exact Riemann solution at xi.
PrimitiveState<1> exact_riemann(const PrimitiveState<1>& left, const PrimitiveState<1>& right, double xi,
                                const EosParams& eos);

}  // namespace aledg
