#pragma once

#include "aledg/basis.hpp"
#include "aledg/mesh1d.hpp"
#include "aledg/physics.hpp"
#include "aledg/scheme.hpp"

#include <Eigen/Dense>

#include <functional>
#include <random>
#include <vector>

namespace aledg {

/// Single-step ALE DG scheme on a moving 1D mesh.
///
/// Each step builds a cell-local space-time predictor, integrates volume and
/// face terms at the time nodes on the linearly moving mesh, moves the
/// vertices and finally applies the limiters and the h_min/h_max adaptation.
template <class Physics>
class Solver1D {
 public:
  using State = typename Physics::State;
  using Point = typename Physics::Point;
  using InitialCondition = std::function<State(double)>;
  using Observer = std::function<void(const StepReport&)>;

  Solver1D(Physics physics, Mesh1D mesh, SchemeConfig config);

  void set_initial(const InitialCondition& f);

  const Physics& physics() const { return phys_; }
  const SchemeConfig& config() const { return cfg_; }
  const BasisSet& basis() const { return basis_; }
  const Mesh1D& mesh() const { return mesh_; }
  Mesh1D& mesh() { return mesh_; }
  const ModalSolution& solution() const { return u_; }
  ModalSolution& solution() { return u_; }
  double time() const { return time_; }
  int steps() const { return steps_; }

  State cell_average(int cell) const;
  /// Solution of `cell` at the reference coordinate xi in [-1, 1].
  State evaluate(int cell, double xi) const;

  /// Fill the mesh vertex velocities for the current solution and mesh mode.
  void compute_vertex_velocities();
  /// Stable step for the current velocities, capped by the orientation bound
  /// and by `remaining`.
  double compute_dt(double remaining) const;
  /// Advance by dt with the vertex velocities currently stored in the mesh.
  StepReport step(double dt);
  /// March to `final_time`; returns the number of steps taken.
  int advance(double final_time, const Observer& observer = {}, int max_steps = 10000000);

  /// Slope limiter followed by the positivity limiter; counts go to `report`.
  void apply_limiters(StepReport& report);

  /// Integral of every conserved variable over the mesh.
  Eigen::VectorXd totals() const;
  /// Norm of u_var - reference(x)_var by quadrature of degree 2k+2.
  double error_norm(const std::function<State(double)>& reference, int var, Norm norm) const;

 private:
  struct Trace {
    State left;
    State right;
  };

  Eigen::MatrixXd predictor_rhs(const Eigen::MatrixXd& U, double h, double wl, double wr) const;
  bool admissible(const Eigen::MatrixXd& U) const;
  State face_flux(const State& ul, const State& ur, double w) const;
  void limit_tvd();

  Physics phys_;
  Mesh1D mesh_;
  SchemeConfig cfg_;
  BasisSet basis_;
  QuadratureRule vol_;
  QuadratureRule time_rule_;
  Eigen::MatrixXd phi_;
  Eigen::MatrixXd dphi_;
  Eigen::MatrixXd check_phi_;
  Eigen::RowVectorXd phi_left_;
  Eigen::RowVectorXd phi_right_;
  ModalSolution u_;
  double time_ = 0.0;
  int steps_ = 0;
  int limited_ = 0;
  std::mt19937_64 rng_;
};

}  // namespace aledg
