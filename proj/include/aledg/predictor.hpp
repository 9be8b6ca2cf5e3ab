#pragma once

#include "aledg/basis.hpp"
#include "aledg/errors.hpp"

#include <Eigen/Dense>

#include <array>
#include <string>
#include <vector>

namespace aledg {

/// Continuous-extension Runge-Kutta pair furnishing U(theta) over a step.
/// Weight b_i(theta) = sum_p b[i][p] theta^(p+1).
struct CerkTableau {
  int stages = 1;
  std::vector<double> c;
  std::vector<std::vector<double>> a;
  std::vector<std::array<double, 3>> b;

  std::vector<double> weights(double theta) const {
    std::vector<double> out(stages);
    for (int i = 0; i < stages; ++i)
      out[i] = b[i][0] * theta + b[i][1] * theta * theta + b[i][2] * theta * theta * theta;
    return out;
  }
};

/// Linear Taylor (k = 1), Heun with its quadratic extension (k = 2) and the
/// four-stage third-order pair of Owren and Zennaro (k = 3).
inline CerkTableau cerk_for_degree(int degree) {
  CerkTableau t;
  if (degree <= 1) {
    t.stages = 1;
    t.c = {0.0};
    t.a = {{}};
    t.b = {{1.0, 0.0, 0.0}};
  } else if (degree == 2) {
    t.stages = 2;
    t.c = {0.0, 1.0};
    t.a = {{}, {1.0}};
    t.b = {{1.0, -0.5, 0.0}, {0.0, 0.5, 0.0}};
  } else if (degree == 3) {
    t.stages = 4;
    t.c = {0.0, 12.0 / 23.0, 4.0 / 5.0, 1.0};
    t.a = {{}, {12.0 / 23.0}, {-68.0 / 375.0, 368.0 / 375.0}, {31.0 / 144.0, 529.0 / 1152.0, 125.0 / 384.0}};
    t.b = {{1.0, -65.0 / 48.0, 41.0 / 72.0},
           {0.0, 529.0 / 384.0, -529.0 / 576.0},
           {0.0, 125.0 / 128.0, -125.0 / 192.0},
           {0.0, -1.0, 1.0}};
  } else {
    throw CapabilityError("cerk_for_degree: degree " + std::to_string(degree) + " not supported");
  }
  return t;
}

/// Outcome of the local predictor of one cell: coefficients at each
/// requested time fraction and the order actually used (degree, 1 for the
/// Taylor fallback, 0 for the frozen state).
struct Prediction {
  std::vector<Eigen::MatrixXd> at;
  int order = 0;
};

/// Integrate dU/dtau = L(U, tau) over one step of length dt with the CERK of
/// `degree` and sample it at `thetas`. `ok(U)` tests admissibility of a
/// candidate polynomial; failing stages fall back to the Taylor form and
/// then to the frozen initial state.
template <class Rhs, class Ok>
Prediction predict(const Eigen::MatrixXd& u0, double dt, int degree, const std::vector<double>& thetas, Rhs&& rhs,
                   Ok&& ok) {
  Prediction out;
  auto build = [&](const CerkTableau& tab) -> bool {
    std::vector<Eigen::MatrixXd> k(tab.stages);
    for (int s = 0; s < tab.stages; ++s) {
      Eigen::MatrixXd us = u0;
      for (int j = 0; j < s; ++j) us += dt * tab.a[s][j] * k[j];
      if (s > 0 && !ok(us)) return false;
      k[s] = rhs(us, tab.c[s] * dt);
    }
    out.at.clear();
    for (double th : thetas) {
      const auto b = tab.weights(th);
      Eigen::MatrixXd u = u0;
      for (int s = 0; s < tab.stages; ++s) u += dt * b[s] * k[s];
      if (!ok(u)) return false;
      out.at.push_back(std::move(u));
    }
    return true;
  };
  if (build(cerk_for_degree(degree))) {
    out.order = degree;
    return out;
  }
  if (degree > 1 && build(cerk_for_degree(1))) {
    out.order = 1;
    return out;
  }
  out.at.assign(thetas.size(), u0);
  out.order = 0;
  return out;
}

}  // namespace aledg
