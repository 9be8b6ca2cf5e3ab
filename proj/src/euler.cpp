#include "aledg/euler.hpp"

#include <algorithm>
#include <cmath>

namespace aledg {

ExactRiemann::ExactRiemann(const PrimitiveState<1>& left, const PrimitiveState<1>& right, const EosParams& eos)
    : left_(left), right_(right), gamma_(eos.gamma) {
  if (!(left.rho > 0 && left.p > 0 && right.rho > 0 && right.p > 0))
    throw InvalidStateError("ExactRiemann: invalid input state");
  c_left_ = sound_speed(left_, eos);
  c_right_ = sound_speed(right_, eos);
  const double du = right_.vel(0) - left_.vel(0);
  if (2.0 * (c_left_ + c_right_) / (gamma_ - 1.0) <= du)
    throw VacuumError("ExactRiemann: initial data generate vacuum");

  auto f = [&](double p, double& df) {
    double dl, dr;
    const double v = pressure_function(p, left_, c_left_, dl) + pressure_function(p, right_, c_right_, dr) + du;
    df = dl + dr;
    return v;
  };

  // f is increasing and concave in p; bracket the root, then run safeguarded Newton.
  double lo = 0.0;
  double hi = std::max(left_.p, right_.p);
  double dummy;
  while (f(hi, dummy) < 0.0) {
    lo = hi;
    hi *= 4.0;
  }
  // Two-rarefaction guess is exact when both waves are rarefactions.
  const double z = (gamma_ - 1.0) / (2.0 * gamma_);
  const double num = c_left_ + c_right_ - 0.5 * (gamma_ - 1.0) * du;
  const double den = c_left_ / std::pow(left_.p, z) + c_right_ / std::pow(right_.p, z);
  double p = std::pow(std::max(num, 1e-300) / den, 1.0 / z);
  if (!(p > lo && p < hi)) p = 0.5 * (lo + hi);

  for (int it = 0; it < 200; ++it) {
    double df;
    const double fv = f(p, df);
    if (fv < 0.0) lo = p; else hi = p;
    double next = p - fv / df;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double change = std::abs(next - p) / (0.5 * (next + p));
    p = next;
    if (change < 1e-12 || hi - lo < 1e-15 * hi) break;
  }
  p_star_ = p;
  double dl, dr;
  u_star_ = 0.5 * (left_.vel(0) + right_.vel(0)) +
            0.5 * (pressure_function(p, right_, c_right_, dr) - pressure_function(p, left_, c_left_, dl));
}

double ExactRiemann::pressure_function(double p, const PrimitiveState<1>& s, double c, double& derivative) const {
  const double g = gamma_;
  if (p > s.p) {
    const double a = 2.0 / ((g + 1.0) * s.rho);
    const double b = (g - 1.0) / (g + 1.0) * s.p;
    const double q = std::sqrt(a / (p + b));
    derivative = q * (1.0 - 0.5 * (p - s.p) / (b + p));
    return (p - s.p) * q;
  }
  const double ratio = p / s.p;
  derivative = std::pow(ratio, -(g + 1.0) / (2.0 * g)) / (s.rho * c);
  return 2.0 * c / (g - 1.0) * (std::pow(ratio, (g - 1.0) / (2.0 * g)) - 1.0);
}

double ExactRiemann::left_shock_speed() const {
  const double g = gamma_;
  return left_.vel(0) - c_left_ * std::sqrt((g + 1.0) / (2.0 * g) * p_star_ / left_.p + (g - 1.0) / (2.0 * g));
}

double ExactRiemann::right_shock_speed() const {
  const double g = gamma_;
  return right_.vel(0) + c_right_ * std::sqrt((g + 1.0) / (2.0 * g) * p_star_ / right_.p + (g - 1.0) / (2.0 * g));
}

double ExactRiemann::rho_star_left() const {
  const double g = gamma_;
  const double r = p_star_ / left_.p;
  if (left_is_shock()) {
    const double gm = (g - 1.0) / (g + 1.0);
    return left_.rho * (r + gm) / (gm * r + 1.0);
  }
  return left_.rho * std::pow(r, 1.0 / g);
}

double ExactRiemann::rho_star_right() const {
  const double g = gamma_;
  const double r = p_star_ / right_.p;
  if (right_is_shock()) {
    const double gm = (g - 1.0) / (g + 1.0);
    return right_.rho * (r + gm) / (gm * r + 1.0);
  }
  return right_.rho * std::pow(r, 1.0 / g);
}

PrimitiveState<1> ExactRiemann::sample(double xi) const {
  const double g = gamma_;
  auto make = [](double rho, double u, double p) { return PrimitiveState<1>{rho, Vec<1>::Constant(u), p}; };
  if (xi <= u_star_) {
    const double ul = left_.vel(0);
    if (left_is_shock()) {
      if (xi <= left_shock_speed()) return left_;
      return make(rho_star_left(), u_star_, p_star_);
    }
    const double head = ul - c_left_;
    const double c_star = c_left_ * std::pow(p_star_ / left_.p, (g - 1.0) / (2.0 * g));
    const double tail = u_star_ - c_star;
    if (xi <= head) return left_;
    if (xi >= tail) return make(rho_star_left(), u_star_, p_star_);
    const double c = 2.0 / (g + 1.0) * (c_left_ + 0.5 * (g - 1.0) * (ul - xi));
    const double u = 2.0 / (g + 1.0) * (c_left_ + 0.5 * (g - 1.0) * ul + xi);
    const double rho = left_.rho * std::pow(c / c_left_, 2.0 / (g - 1.0));
    return make(rho, u, left_.p * std::pow(c / c_left_, 2.0 * g / (g - 1.0)));
  }
  const double ur = right_.vel(0);
  if (right_is_shock()) {
    if (xi >= right_shock_speed()) return right_;
    return make(rho_star_right(), u_star_, p_star_);
  }
  const double head = ur + c_right_;
  const double c_star = c_right_ * std::pow(p_star_ / right_.p, (g - 1.0) / (2.0 * g));
  const double tail = u_star_ + c_star;
  if (xi >= head) return right_;
  if (xi <= tail) return make(rho_star_right(), u_star_, p_star_);
  const double c = 2.0 / (g + 1.0) * (c_right_ - 0.5 * (g - 1.0) * (ur - xi));
  const double u = 2.0 / (g + 1.0) * (-c_right_ + 0.5 * (g - 1.0) * ur + xi);
  const double rho = right_.rho * std::pow(c / c_right_, 2.0 / (g - 1.0));
  return make(rho, u, right_.p * std::pow(c / c_right_, 2.0 * g / (g - 1.0)));
}

PrimitiveState<1> exact_riemann(const PrimitiveState<1>& left, const PrimitiveState<1>& right, double xi,
                                const EosParams& eos) {
  return ExactRiemann(left, right, eos).sample(xi);
}

}  // namespace aledg
