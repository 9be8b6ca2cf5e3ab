#include "aledg/solver2d.hpp"

#include "aledg/errors.hpp"
#include "aledg/limiter.hpp"
#include "aledg/motion.hpp"
#include "aledg/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace aledg {

namespace {

const std::array<Vec2, 3> kRefVertex = {Vec2(0.0, 0.0), Vec2(1.0, 0.0), Vec2(0.0, 1.0)};

}  // namespace

template <class Physics>
Solver2D<Physics>::Solver2D(Physics physics, SimplicialMesh mesh, SchemeConfig config)
    : phys_(std::move(physics)),
      mesh_(std::move(mesh)),
      cfg_(std::move(config)),
      basis_(2, cfg_.degree),
      vol_(quadrature_for(2, 2 * cfg_.degree + 1)),
      face_rule_(gauss_legendre_unit(cfg_.degree + 1)),
      time_rule_(time_quadrature(cfg_.degree)),
      rng_(cfg_.seed) {
  if (cfg_.limiter.kind == LimiterKind::tvd_1d) throw CapabilityError("limiter: tvd_1d is a 1D limiter");
  cfg_.validate();
  if (mesh_.num_cells() < 1) throw ConfigError("mesh", "mesh has no cells");
  mesh_.check_orientation();
  phi_ = basis_.values(vol_.points);
  dphi_xi_ = basis_.derivatives(vol_.points, 0);
  dphi_eta_ = basis_.derivatives(vol_.points, 1);
  const int nfp = face_rule_.size();
  Eigen::MatrixXd all_face(2, 3 * nfp);
  for (int i = 0; i < 3; ++i) {
    const Vec2 a = kRefVertex[(i + 1) % 3], b = kRefVertex[(i + 2) % 3];
    Eigen::MatrixXd fwd(2, nfp), rev(2, nfp);
    for (int p = 0; p < nfp; ++p) {
      const double s = face_rule_.points(0, p);
      fwd.col(p) = (1.0 - s) * a + s * b;
      rev.col(p) = s * a + (1.0 - s) * b;
    }
    phi_face_[i][0] = basis_.values(fwd);
    phi_face_[i][1] = basis_.values(rev);
    all_face.middleCols(i * nfp, nfp) = fwd;
  }
  check_phi_.resize(phi_.rows() + 3 * nfp, basis_.size());
  check_phi_ << phi_, basis_.values(all_face);
  Eigen::MatrixXd mids(2, 3);
  for (int i = 0; i < 3; ++i) mids.col(i) = 0.5 * (kRefVertex[(i + 1) % 3] + kRefVertex[(i + 2) % 3]);
  mid_phi_ = basis_.values(mids).leftCols(3);
  mid_phi_inv_ = mid_phi_.inverse();
  u_.assign(mesh_.num_cells(), Eigen::MatrixXd::Zero(basis_.size(), Physics::nvar));
}

template <class Physics>
void Solver2D<Physics>::set_initial(const InitialCondition& f) {
  const QuadratureRule rule = quadrature_for(2, 2 * cfg_.degree + 2);
  u_.resize(mesh_.num_cells());
  for (int c = 0; c < mesh_.num_cells(); ++c)
    u_[c] = project(basis_, mesh_.map(c), [&](const Eigen::VectorXd& x) -> Eigen::VectorXd { return f(Vec2(x)); },
                    Physics::nvar, rule);
  if constexpr (Physics::is_euler) {
    if (cfg_.limiter.positivity)
      for (auto& c : u_) positivity_limit(c, check_phi_, 2, phys_.eos.gamma, cfg_.limiter.eps_pos);
  }
  time_ = 0.0;
  steps_ = 0;
}

template <class Physics>
typename Solver2D<Physics>::State Solver2D<Physics>::cell_average(int cell) const {
  return (u_[cell].row(0).transpose() * constant_mode_value(2)).eval();
}

template <class Physics>
typename Solver2D<Physics>::State Solver2D<Physics>::evaluate(int cell, const Vec2& xi) const {
  Eigen::MatrixXd p(2, 1);
  p.col(0) = xi;
  return (basis_.values(p) * u_[cell]).transpose();
}

template <class Physics>
std::string Solver2D<Physics>::compute_vertex_velocities(double remaining) {
  const int nv = mesh_.num_vertices();
  if (cfg_.mode == MeshMode::static_mesh) {
    mesh_.w.assign(nv, Vec2::Zero());
    smoothing_path_ = "none";
    return smoothing_path_;
  }
  std::vector<Vec2> v(mesh_.num_cells());
  const Vec2 centroid(1.0 / 3.0, 1.0 / 3.0);
  for (int c = 0; c < mesh_.num_cells(); ++c) v[c] = phys_.velocity(evaluate(c, centroid));
  std::vector<Vec2> w = average_vertex_velocity(mesh_, v);
  if (cfg_.velocity_noise > 0.0) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int m = 0; m < nv; ++m) {
      if (mesh_.master[m] != m) continue;
      const double scale = cfg_.velocity_noise * w[m].norm();
      const double a = unif(rng_), b = unif(rng_);
      w[m] += scale * Vec2(a, b);
    }
    for (int i = 0; i < nv; ++i) w[i] = w[mesh_.master[i]];
  }
  constrain_boundary_velocity(mesh_, w);
  mesh_.w = w;
  smoothing_path_ = "none";
  if (cfg_.smoothing.kind != SmoothingKind::none) {
    const double dt = compute_dt(remaining);
    if (dt > 0.0 && std::isfinite(dt)) {
      SmoothingResult r = smooth(mesh_, w, dt, max_quality(), cfg_.smoothing);
      mesh_.w = std::move(r.w);
      smoothing_path_ = r.path;
    }
  }
  return smoothing_path_;
}

template <class Physics>
double Solver2D<Physics>::compute_dt(double remaining) const {
  double dt = std::numeric_limits<double>::infinity();
  for (int c = 0; c < mesh_.num_cells(); ++c) {
    const State avg = cell_average(c);
    const Vec2 v = phys_.velocity(avg);
    const double cs = phys_.sound_speed(avg);
    double rel = 0.0;
    for (int j : mesh_.cells[c]) rel = std::max(rel, (v - mesh_.w[j]).norm());
    const double lambda = rel + cs;
    if (lambda > 0.0) dt = std::min(dt, 2.0 * mesh_.inradius(c) / lambda);
  }
  dt *= cfg_.cfl / (2 * cfg_.degree + 1);
  dt = std::min(dt, max_timestep_orientation(mesh_, cfg_.orientation_safety));
  return std::min(dt, remaining);
}

template <class Physics>
Eigen::MatrixXd Solver2D<Physics>::predictor_rhs(const Eigen::MatrixXd& U, const Eigen::Matrix2d& J, const Vec2& w0,
                                                 const Eigen::Matrix2d& Jw) const {
  const Eigen::Matrix2d Ji = J.inverse();
  const Eigen::MatrixXd values = phi_ * U;
  const Eigen::MatrixXd dxi = dphi_xi_ * U;
  const Eigen::MatrixXd deta = dphi_eta_ * U;
  Eigen::MatrixXd r(vol_.size(), Physics::nvar);
  const Point ex(1.0, 0.0), ey(0.0, 1.0);
  for (int q = 0; q < vol_.size(); ++q) {
    const Vec2 w = w0 + Jw * vol_.points.col(q);
    const State uq = values.row(q).transpose();
    const State ux = (Ji(0, 0) * dxi.row(q) + Ji(1, 0) * deta.row(q)).transpose();
    const State uy = (Ji(0, 1) * dxi.row(q) + Ji(1, 1) * deta.row(q)).transpose();
    const State f = phys_.jacobian(uq, ex) * ux + phys_.jacobian(uq, ey) * uy - w(0) * ux - w(1) * uy;
    r.row(q) = -vol_.weights(q) * f.transpose();
  }
  return phi_.transpose() * r;
}

template <class Physics>
bool Solver2D<Physics>::admissible(const Eigen::MatrixXd& U) const {
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
StepReport Solver2D<Physics>::step(double dt) {
  const int n = mesh_.num_cells();
  const int ng = time_rule_.size();
  const int nm = basis_.size();
  const int nfp = face_rule_.size();
  constexpr int nvar = Physics::nvar;
  StepReport report;
  report.dt = dt;
  report.smoothing = smoothing_path_;
  report.orientation_bound = max_timestep_orientation(mesh_, cfg_.orientation_safety);
  if (!(dt > 0.0) || !std::isfinite(dt)) throw StepError("step: invalid time step", -1);
  if (dt > report.orientation_bound * (1.0 + 1e-12))
    throw TanglingError("step: dt exceeds the orientation bound");

  std::vector<double> thetas(ng);
  for (int g = 0; g < ng; ++g) thetas[g] = time_rule_.points(0, g);

  std::vector<Eigen::Matrix2d> J0(n), Jw(n);
  for (int c = 0; c < n; ++c) {
    const auto& v = mesh_.cells[c];
    J0[c].col(0) = mesh_.x[v[1]] - mesh_.x[v[0]];
    J0[c].col(1) = mesh_.x[v[2]] - mesh_.x[v[0]];
    Jw[c].col(0) = mesh_.w[v[1]] - mesh_.w[v[0]];
    Jw[c].col(1) = mesh_.w[v[2]] - mesh_.w[v[0]];
  }

  std::vector<std::vector<Eigen::MatrixXd>> pred(n);
  for (int c = 0; c < n; ++c) {
    const Vec2 w0 = mesh_.w[mesh_.cells[c][0]];
    auto rhs = [&](const Eigen::MatrixXd& U, double tau) {
      return predictor_rhs(U, J0[c] + tau * Jw[c], w0, Jw[c]);
    };
    auto ok = [&](const Eigen::MatrixXd& U) { return admissible(U); };
    Prediction p = predict(u_[c], dt, cfg_.degree, thetas, rhs, ok);
    if (p.order < cfg_.degree) ++report.predictor_fallbacks;
    pred[c] = std::move(p.at);
  }

  std::vector<Eigen::MatrixXd> res(n, Eigen::MatrixXd::Zero(nm, nvar));
  const Point ex(1.0, 0.0), ey(0.0, 1.0);
  Eigen::MatrixXd gxi(vol_.size(), nvar), geta(vol_.size(), nvar), hmat(nfp, nvar);
  for (int g = 0; g < ng; ++g) {
    const double wg = time_rule_.weights(g);
    const double tau = thetas[g] * dt;

    for (int c = 0; c < n; ++c) {
      const Eigen::Matrix2d J = J0[c] + tau * Jw[c];
      const double detj = J.determinant();
      const Eigen::Matrix2d Ji = J.inverse();
      const Vec2 w0 = mesh_.w[mesh_.cells[c][0]];
      const Eigen::MatrixXd values = phi_ * pred[c][g];
      for (int q = 0; q < vol_.size(); ++q) {
        const Vec2 w = w0 + Jw[c] * vol_.points.col(q);
        const State uq = values.row(q).transpose();
        const State gx = phys_.ale_flux(uq, w, ex);
        const State gy = phys_.ale_flux(uq, w, ey);
        const double wq = vol_.weights(q);
        gxi.row(q) = wq * (Ji(0, 0) * gx + Ji(0, 1) * gy).transpose();
        geta.row(q) = wq * (Ji(1, 0) * gx + Ji(1, 1) * gy).transpose();
      }
      res[c] += (wg * detj) * (dphi_xi_.transpose() * gxi + dphi_eta_.transpose() * geta);
    }

    for (const Face& face : mesh_.faces) {
      const int c0 = face.cell[0], l0 = face.local[0];
      const int va = face.v[0], vb = face.v[1];
      const Vec2 a = mesh_.x[va] + tau * mesh_.w[va];
      const Vec2 b = mesh_.x[vb] + tau * mesh_.w[vb];
      const Vec2 t = b - a;
      const double len = t.norm();
      const Point nrm(t(1) / len, -t(0) / len);
      const Eigen::MatrixXd inner = phi_face_[l0][0] * pred[c0][g];
      Eigen::MatrixXd outer;
      if (!face.boundary()) outer = phi_face_[face.local[1]][1] * pred[face.cell[1]][g];
      const State ghost_mean = (pred[c0][g].row(0) * constant_mode_value(2)).transpose();
      for (int p = 0; p < nfp; ++p) {
        const double s = face_rule_.points(0, p);
        const Vec2 w = (1.0 - s) * mesh_.w[va] + s * mesh_.w[vb];
        const State ul = inner.row(p).transpose();
        State h;
        if (!face.boundary())
          h = phys_.numerical_flux(ul, State(outer.row(p).transpose()), w, nrm);
        else if (face.kind == BoundaryKind::reflective)
          h = phys_.numerical_flux(ul, phys_.reflect(ul, nrm), w, nrm);
        else
          h = phys_.numerical_flux(ul, ghost_mean, w, nrm);
        hmat.row(p) = (face_rule_.weights(p) * wg * len) * h.transpose();
      }
      res[c0] -= phi_face_[l0][0].transpose() * hmat;
      if (!face.boundary()) res[face.cell[1]] += phi_face_[face.local[1]][1].transpose() * hmat;
    }
  }

  for (int c = 0; c < n; ++c) {
    const double d_old = J0[c].determinant();
    const double d_new = (J0[c] + dt * Jw[c]).determinant();
    u_[c] = (d_old * u_[c] + dt * res[c]) / d_new;
  }
  move(mesh_, dt);

  if (cfg_.mode == MeshMode::moving && cfg_.adapt.swap)
    report.swaps = improve_mesh(mesh_, u_, basis_, cfg_.adapt.quality_threshold, cfg_.adapt.hysteresis);

  apply_limiters(report);

  time_ += dt;
  ++steps_;
  report.step = steps_;
  report.time = time_;
  report.cells = n;
  report.min_quality = min_quality();
  report.max_quality = max_quality();
  const Eigen::VectorXd tot = totals();
  report.totals.assign(tot.data(), tot.data() + tot.size());
  return report;
}

template <class Physics>
void Solver2D<Physics>::limit_tvb() {
  const int n = mesh_.num_cells();
  std::vector<State> mean(n);
  for (int c = 0; c < n; ++c) mean[c] = cell_average(c);
  ModalSolution out = u_;
  for (int c = 0; c < n; ++c) {
    const Vec2 bc = mesh_.barycenter(c);
    std::array<Vec2, 3> nb;
    std::array<State, 3> nb_mean;
    std::array<Vec2, 3> mid;
    for (int i = 0; i < 3; ++i) {
      mid[i] = mesh_.face_midpoint(c, i);
      const int f = mesh_.cell_faces[c][i];
      const int other = mesh_.neighbour(c, i);
      if (other >= 0) {
        nb[i] = mesh_.barycenter(other) + mesh_.neighbour_offset(f, c);
        nb_mean[i] = mean[other];
      } else {
        const Vec2 nu = mesh_.face_normal(c, i);
        nb[i] = bc + 2.0 * (mid[i] - bc).dot(nu) * nu;
        nb_mean[i] = mean[c];
      }
    }
    const Eigen::MatrixXd slope_mid = mid_phi_.rightCols(2) * u_[c].middleRows(1, 2);
    std::vector<FaceSlope<State, Point>> faces(3);
    bool cone_failed = false;
    for (int i = 0; i < 3; ++i) {
      const auto cw = cone_weights(mid[i], bc, nb);
      if (!cw) {
        cone_failed = true;
        break;
      }
      faces[i].u_tilde = slope_mid.row(i).transpose();
      faces[i].du_bar = cw->alpha(0) * (nb_mean[cw->j] - mean[c]) + cw->alpha(1) * (nb_mean[cw->k] - mean[c]);
      faces[i].direction = (mid[i] - bc).normalized();
    }
    if (cone_failed) {
      out[c].bottomRows(basis_.size() - 1).setZero();
      ++limited_;
      continue;
    }
    const auto delta = limit_increments(phys_, mean[c], faces, cfg_.limiter, 2.0 * mesh_.inradius(c));
    if (!delta) continue;
    Eigen::Matrix<double, 3, Physics::nvar> vals;
    for (int i = 0; i < 3; ++i) vals.row(i) = (mean[c] + (*delta)[i]).transpose();
    const Eigen::MatrixXd lin = mid_phi_inv_ * vals;
    out[c].setZero();
    out[c].row(0) = u_[c].row(0);
    out[c].middleRows(1, 2) = lin.bottomRows(2);
    ++limited_;
  }
  u_ = std::move(out);
}

template <class Physics>
void Solver2D<Physics>::apply_limiters(StepReport& report) {
  limited_ = 0;
  if (cfg_.limiter.kind == LimiterKind::tvb_2d) limit_tvb();
  else if (cfg_.limiter.kind == LimiterKind::tvd_1d)
    throw CapabilityError("limiter: tvd_1d is a 1D limiter");
  report.limited_cells = limited_;
  if constexpr (Physics::is_euler) {
    for (int c = 0; c < mesh_.num_cells(); ++c) {
      if (!phys_.admissible(cell_average(c)))
        throw StepError("step: inadmissible cell average in cell " + std::to_string(c), c);
      if (cfg_.limiter.positivity &&
          positivity_limit(u_[c], check_phi_, 2, phys_.eos.gamma, cfg_.limiter.eps_pos))
        ++report.positivity_cells;
    }
  } else {
    for (int c = 0; c < mesh_.num_cells(); ++c)
      if (!u_[c].allFinite()) throw StepError("step: non-finite solution in cell " + std::to_string(c), c);
  }
}

template <class Physics>
int Solver2D<Physics>::advance(double final_time, const Observer& observer, int max_steps) {
  int taken = 0;
  while (time_ < final_time * (1.0 - 1e-14) && final_time - time_ > 1e-15) {
    if (taken >= max_steps) throw StepError("advance: step limit reached", -1);
    compute_vertex_velocities(final_time - time_);
    const double dt = compute_dt(final_time - time_);
    if (!(dt > 1e-14 * std::max(1.0, final_time))) throw StepError("advance: time step collapsed", -1);
    const StepReport r = step(dt);
    ++taken;
    if (observer) observer(r);
  }
  return taken;
}

template <class Physics>
Eigen::VectorXd Solver2D<Physics>::totals() const {
  Eigen::VectorXd t = Eigen::VectorXd::Zero(Physics::nvar);
  for (int c = 0; c < mesh_.num_cells(); ++c) t += mesh_.area(c) * cell_average(c);
  return t;
}

template <class Physics>
double Solver2D<Physics>::error_norm(const std::function<State(const Vec2&)>& reference, int var, Norm norm) const {
  const QuadratureRule rule = quadrature_for(2, 2 * cfg_.degree + 2);
  const Eigen::MatrixXd phi = basis_.values(rule.points);
  double acc = 0.0;
  for (int c = 0; c < mesh_.num_cells(); ++c) {
    const AffineMap map = mesh_.map(c);
    const double detj = std::abs(map.det());
    const Eigen::VectorXd vals = phi * u_[c].col(var);
    for (int q = 0; q < rule.size(); ++q) {
      const Vec2 x = map(rule.points.col(q));
      const double e = std::abs(vals(q) - reference(x)(var));
      if (norm == Norm::Linf) acc = std::max(acc, e);
      else if (norm == Norm::L1) acc += detj * rule.weights(q) * e;
      else acc += detj * rule.weights(q) * e * e;
    }
  }
  return norm == Norm::L2 ? std::sqrt(acc) : acc;
}

template <class Physics>
double Solver2D<Physics>::max_quality() const {
  double q = 0.0;
  for (int c = 0; c < mesh_.num_cells(); ++c) q = std::max(q, mesh_.quality(c));
  return q;
}

template <class Physics>
double Solver2D<Physics>::min_quality() const {
  double q = std::numeric_limits<double>::infinity();
  for (int c = 0; c < mesh_.num_cells(); ++c) q = std::min(q, mesh_.quality(c));
  return q;
}

template class Solver2D<EulerPhysics<2>>;
template class Solver2D<AdvectionPhysics<2>>;

}  // namespace aledg
