#include "aledg/solver1d.hpp"

#include "aledg/errors.hpp"
#include "aledg/limiter.hpp"
#include "aledg/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace aledg {

template <class Physics>
Solver1D<Physics>::Solver1D(Physics physics, Mesh1D mesh, SchemeConfig config)
    : phys_(std::move(physics)),
      mesh_(std::move(mesh)),
      cfg_(std::move(config)),
      basis_(1, cfg_.degree),
      vol_(quadrature_for(1, 2 * cfg_.degree + 1)),
      time_rule_(time_quadrature(cfg_.degree)),
      rng_(cfg_.seed) {
  cfg_.validate();
  if (cfg_.limiter.kind == LimiterKind::tvb_2d) throw CapabilityError("limiter: tvb_2d is a 2D limiter");
  if (mesh_.num_cells() < 1) throw ConfigError("n", "mesh has no cells");
  phi_ = basis_.values(vol_.points);
  dphi_ = basis_.derivatives(vol_.points, 0);
  Eigen::MatrixXd ends(1, 2);
  ends << -1.0, 1.0;
  const Eigen::MatrixXd end_phi = basis_.values(ends);
  phi_left_ = end_phi.row(0);
  phi_right_ = end_phi.row(1);
  check_phi_.resize(phi_.rows() + 2, basis_.size());
  check_phi_ << phi_, end_phi;
  u_.assign(mesh_.num_cells(), Eigen::MatrixXd::Zero(basis_.size(), Physics::nvar));
}

template <class Physics>
void Solver1D<Physics>::set_initial(const InitialCondition& f) {
  const QuadratureRule rule = quadrature_for(1, 2 * cfg_.degree + 2);
  u_.resize(mesh_.num_cells());
  for (int c = 0; c < mesh_.num_cells(); ++c) {
    const AffineMap map = AffineMap::interval(mesh_.x[c], mesh_.x[c + 1]);
    u_[c] = project(basis_, map, [&](const Eigen::VectorXd& x) -> Eigen::VectorXd { return f(x(0)); },
                    Physics::nvar, rule);
  }
  if constexpr (Physics::is_euler) {
    if (cfg_.limiter.positivity)
      for (auto& c : u_) positivity_limit(c, check_phi_, 1, phys_.eos.gamma, cfg_.limiter.eps_pos);
  }
  time_ = 0.0;
  steps_ = 0;
}

template <class Physics>
typename Solver1D<Physics>::State Solver1D<Physics>::cell_average(int cell) const {
  return (u_[cell].row(0).transpose() * constant_mode_value(1)).eval();
}

template <class Physics>
typename Solver1D<Physics>::State Solver1D<Physics>::evaluate(int cell, double xi) const {
  Eigen::VectorXd p(1);
  p(0) = xi;
  State s;
  for (int v = 0; v < Physics::nvar; ++v) {
    double acc = 0.0;
    for (int m = 0; m < basis_.size(); ++m) acc += u_[cell](m, v) * basis_.eval(p, m);
    s(v) = acc;
  }
  return s;
}

template <class Physics>
void Solver1D<Physics>::compute_vertex_velocities() {
  const int n = mesh_.num_cells();
  if (cfg_.mode == MeshMode::static_mesh) {
    mesh_.w.assign(n + 1, 0.0);
    return;
  }
  std::vector<double> v(n);
  for (int c = 0; c < n; ++c) v[c] = phys_.velocity(evaluate(c, 0.0))(0);

  if constexpr (Physics::is_euler) {
    if (cfg_.velocity == VelocityKind::linearized_riemann) {
      auto prim = [&](const State& s) { return cons_to_prim<1>(s, phys_.eos); };
      std::vector<double> w(n + 1, 0.0);
      for (int i = 1; i < n; ++i)
        w[i] = linearized_riemann_velocity(prim(evaluate(i - 1, 1.0)), prim(evaluate(i, -1.0)), phys_.eos);
      if (mesh_.periodic()) {
        w[0] = w[n] = linearized_riemann_velocity(prim(evaluate(n - 1, 1.0)), prim(evaluate(0, -1.0)), phys_.eos);
      } else {
        w[0] = mesh_.left == BoundaryKind::reflective ? 0.0 : prim(evaluate(0, -1.0)).vel(0);
        w[n] = mesh_.right == BoundaryKind::reflective ? 0.0 : prim(evaluate(n - 1, 1.0)).vel(0);
      }
      mesh_.w = std::move(w);
    } else {
      mesh_.w = average_vertex_velocity(mesh_, v);
    }
  } else {
    mesh_.w = average_vertex_velocity(mesh_, v);
  }

  if (cfg_.velocity_noise > 0.0) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int i = 0; i <= n; ++i) {
      if (!mesh_.periodic() && ((i == 0 && mesh_.left == BoundaryKind::reflective) ||
                                (i == n && mesh_.right == BoundaryKind::reflective)))
        continue;
      if (mesh_.periodic() && i == n) {
        mesh_.w[n] = mesh_.w[0];
        continue;
      }
      mesh_.w[i] += cfg_.velocity_noise * std::abs(mesh_.w[i]) * unif(rng_);
    }
  }
}

template <class Physics>
double Solver1D<Physics>::compute_dt(double remaining) const {
  const int n = mesh_.num_cells();
  double dt = std::numeric_limits<double>::infinity();
  for (int c = 0; c < n; ++c) {
    const State avg = cell_average(c);
    const double v = phys_.velocity(avg)(0);
    const double cs = phys_.sound_speed(avg);
    const double lambda = std::max(std::abs(v - mesh_.w[c]), std::abs(v - mesh_.w[c + 1])) + cs;
    if (lambda > 0.0) dt = std::min(dt, mesh_.length(c) / lambda);
  }
  dt *= cfg_.cfl / (2 * cfg_.degree + 1);
  dt = std::min(dt, max_timestep_orientation(mesh_, cfg_.orientation_safety));
  return std::min(dt, remaining);
}

template <class Physics>
Eigen::MatrixXd Solver1D<Physics>::predictor_rhs(const Eigen::MatrixXd& U, double h, double wl,
                                                 double wr) const {
  const Eigen::MatrixXd values = phi_ * U;
  const Eigen::MatrixXd grads = dphi_ * U;
  Eigen::MatrixXd r(vol_.size(), Physics::nvar);
  Point n = Point::Ones();
  for (int q = 0; q < vol_.size(); ++q) {
    const double xi = vol_.points(0, q);
    const double w = 0.5 * (1.0 - xi) * wl + 0.5 * (1.0 + xi) * wr;
    const State uq = values.row(q).transpose();
    const State dudx = grads.row(q).transpose() * (2.0 / h);
    const State f = phys_.jacobian(uq, n) * dudx - w * dudx;
    r.row(q) = -vol_.weights(q) * f.transpose();
  }
  return phi_.transpose() * r;
}

template <class Physics>
bool Solver1D<Physics>::admissible(const Eigen::MatrixXd& U) const {
  if constexpr (Physics::is_euler) {
    const Eigen::MatrixXd values = check_phi_ * U;
    for (int q = 0; q < values.rows(); ++q)
      if (!phys_.admissible(values.row(q).transpose())) return false;
    return true;
  } else {
    return U.allFinite();
  }
}

template <class Physics>
typename Solver1D<Physics>::State Solver1D<Physics>::face_flux(const State& ul, const State& ur, double w) const {
  return phys_.numerical_flux(ul, ur, Point::Constant(w), Point::Ones());
}

template <class Physics>
StepReport Solver1D<Physics>::step(double dt) {
  const int n = mesh_.num_cells();
  const int ng = time_rule_.size();
  const int nm = basis_.size();
  StepReport report;
  report.dt = dt;
  report.orientation_bound = max_timestep_orientation(mesh_, cfg_.orientation_safety);
  if (!(dt > 0.0) || !std::isfinite(dt)) throw StepError("step: invalid time step", -1);
  if (dt > report.orientation_bound * (1.0 + 1e-12))
    throw TanglingError("step: dt exceeds the orientation bound");

  std::vector<double> thetas(ng);
  for (int g = 0; g < ng; ++g) thetas[g] = time_rule_.points(0, g);

  // Cell-local predictor at each time node.
  std::vector<std::vector<Eigen::MatrixXd>> pred(n);
  for (int c = 0; c < n; ++c) {
    const double h0 = mesh_.length(c);
    const double wl = mesh_.w[c];
    const double wr = mesh_.w[c + 1];
    auto rhs = [&](const Eigen::MatrixXd& U, double tau) { return predictor_rhs(U, h0 + tau * (wr - wl), wl, wr); };
    auto ok = [&](const Eigen::MatrixXd& U) { return admissible(U); };
    Prediction p = predict(u_[c], dt, cfg_.degree, thetas, rhs, ok);
    if (p.order < cfg_.degree) ++report.predictor_fallbacks;
    pred[c] = std::move(p.at);
  }

  std::vector<Eigen::MatrixXd> res(n, Eigen::MatrixXd::Zero(nm, Physics::nvar));
  std::vector<Trace> traces(n);
  std::vector<State> flux(n + 1);
  for (int g = 0; g < ng; ++g) {
    const double wg = time_rule_.weights(g);
    for (int c = 0; c < n; ++c) {
      traces[c].left = (phi_left_ * pred[c][g]).transpose();
      traces[c].right = (phi_right_ * pred[c][g]).transpose();
    }
    for (int i = 1; i < n; ++i) flux[i] = face_flux(traces[i - 1].right, traces[i].left, mesh_.w[i]);
    if (mesh_.periodic()) {
      flux[0] = flux[n] = face_flux(traces[n - 1].right, traces[0].left, mesh_.w[0]);
    } else {
      const State& a = traces[0].left;
      flux[0] = mesh_.left == BoundaryKind::reflective ? face_flux(phys_.reflect(a, Point::Ones()), a, 0.0)
                                                       : face_flux(State((pred[0][g].row(0) * constant_mode_value(1)).transpose()), a, mesh_.w[0]);
      const State& b = traces[n - 1].right;
      flux[n] = mesh_.right == BoundaryKind::reflective ? face_flux(b, phys_.reflect(b, Point::Ones()), 0.0)
                                                        : face_flux(b, State((pred[n - 1][g].row(0) * constant_mode_value(1)).transpose()), mesh_.w[n]);
    }
    for (int c = 0; c < n; ++c) {
      const Eigen::MatrixXd values = phi_ * pred[c][g];
      Eigen::MatrixXd G(vol_.size(), Physics::nvar);
      for (int q = 0; q < vol_.size(); ++q) {
        const double xi = vol_.points(0, q);
        const double w = 0.5 * (1.0 - xi) * mesh_.w[c] + 0.5 * (1.0 + xi) * mesh_.w[c + 1];
        G.row(q) = vol_.weights(q) * phys_.ale_flux(values.row(q).transpose(), Point::Constant(w), Point::Ones()).transpose();
      }
      res[c] += wg * (dphi_.transpose() * G - phi_right_.transpose() * flux[c + 1].transpose() +
                      phi_left_.transpose() * flux[c].transpose());
    }
  }

  for (int c = 0; c < n; ++c) {
    const double h_old = mesh_.length(c);
    const double h_new = h_old + dt * (mesh_.w[c + 1] - mesh_.w[c]);
    u_[c] = (h_old * u_[c] + 2.0 * dt * res[c]) / h_new;
  }
  move(mesh_, dt);

  apply_limiters(report);

  if (cfg_.adapt.h_min > 0.0 || cfg_.adapt.h_max > 0.0) {
    const AdaptStats st = adapt(mesh_, u_, basis_, cfg_.adapt.h_min, cfg_.adapt.h_max);
    report.splits = st.splits;
    report.merges = st.merges;
  }

  time_ += dt;
  ++steps_;
  report.step = steps_;
  report.time = time_;
  report.cells = mesh_.num_cells();
  const Eigen::VectorXd tot = totals();
  report.totals.assign(tot.data(), tot.data() + tot.size());
  return report;
}

template <class Physics>
void Solver1D<Physics>::limit_tvd() {
  const int n = mesh_.num_cells();
  if (cfg_.degree < 1) return;
  const double phi1 = phi_right_(1);
  std::vector<State> mean(n);
  for (int c = 0; c < n; ++c) mean[c] = cell_average(c);
  ModalSolution out = u_;
  for (int c = 0; c < n; ++c) {
    const double h = mesh_.length(c);
    const double bc = mesh_.barycenter(c);
    State du_left = State::Zero();
    State du_right = State::Zero();
    // Open and reflective ends use a mirrored ghost carrying the cell mean.
    if (c > 0 || mesh_.periodic()) {
      const int l = c > 0 ? c - 1 : n - 1;
      const double bl = c > 0 ? mesh_.barycenter(l) : mesh_.barycenter(l) - mesh_.period();
      du_left = (0.5 * h / (bc - bl)) * (mean[l] - mean[c]);
    }
    if (c < n - 1 || mesh_.periodic()) {
      const int r = c < n - 1 ? c + 1 : 0;
      const double br = c < n - 1 ? mesh_.barycenter(r) : mesh_.barycenter(r) + mesh_.period();
      du_right = (0.5 * h / (br - bc)) * (mean[r] - mean[c]);
    }
    const State slope = (u_[c].row(1) * phi1).transpose();
    std::vector<FaceSlope<State, Point>> faces = {{State(-slope), du_left, Point::Constant(-1.0)},
                                                  {slope, du_right, Point::Ones()}};
    const auto delta = limit_increments(phys_, mean[c], faces, cfg_.limiter, h);
    if (!delta) continue;
    out[c].bottomRows(basis_.size() - 1).setZero();
    out[c].row(1) = (*delta)[1].transpose() / phi1;
    ++limited_;
  }
  u_ = std::move(out);
}

template <class Physics>
void Solver1D<Physics>::apply_limiters(StepReport& report) {
  limited_ = 0;
  if (cfg_.limiter.kind != LimiterKind::none) limit_tvd();
  report.limited_cells = limited_;
  if constexpr (Physics::is_euler) {
    for (int c = 0; c < mesh_.num_cells(); ++c) {
      if (!phys_.admissible(cell_average(c)))
        throw StepError("step: inadmissible cell average in cell " + std::to_string(c), c);
      if (cfg_.limiter.positivity &&
          positivity_limit(u_[c], check_phi_, 1, phys_.eos.gamma, cfg_.limiter.eps_pos))
        ++report.positivity_cells;
    }
  } else {
    for (int c = 0; c < mesh_.num_cells(); ++c)
      if (!u_[c].allFinite()) throw StepError("step: non-finite solution in cell " + std::to_string(c), c);
  }
}

template <class Physics>
int Solver1D<Physics>::advance(double final_time, const Observer& observer, int max_steps) {
  int taken = 0;
  while (time_ < final_time * (1.0 - 1e-14) && final_time - time_ > 1e-15) {
    if (taken >= max_steps) throw StepError("advance: step limit reached", -1);
    compute_vertex_velocities();
    const double dt = compute_dt(final_time - time_);
    if (!(dt > 1e-14 * std::max(1.0, final_time))) throw StepError("advance: time step collapsed", -1);
    const StepReport r = step(dt);
    ++taken;
    if (observer) observer(r);
  }
  return taken;
}

template <class Physics>
Eigen::VectorXd Solver1D<Physics>::totals() const {
  Eigen::VectorXd t = Eigen::VectorXd::Zero(Physics::nvar);
  for (int c = 0; c < mesh_.num_cells(); ++c) t += mesh_.length(c) * cell_average(c);
  return t;
}

template <class Physics>
double Solver1D<Physics>::error_norm(const std::function<State(double)>& reference, int var, Norm norm) const {
  const QuadratureRule rule = quadrature_for(1, 2 * cfg_.degree + 2);
  const Eigen::MatrixXd phi = basis_.values(rule.points);
  double acc = 0.0;
  for (int c = 0; c < mesh_.num_cells(); ++c) {
    const Eigen::VectorXd vals = phi * u_[c].col(var);
    const double half = 0.5 * mesh_.length(c);
    for (int q = 0; q < rule.size(); ++q) {
      const double x = mesh_.barycenter(c) + half * rule.points(0, q);
      const double e = std::abs(vals(q) - reference(x)(var));
      if (norm == Norm::Linf) acc = std::max(acc, e);
      else if (norm == Norm::L1) acc += half * rule.weights(q) * e;
      else acc += half * rule.weights(q) * e * e;
    }
  }
  return norm == Norm::L2 ? std::sqrt(acc) : acc;
}

template class Solver1D<EulerPhysics<1>>;
template class Solver1D<AdvectionPhysics<1>>;

}  // namespace aledg
