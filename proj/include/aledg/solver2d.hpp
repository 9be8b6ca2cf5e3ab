#pragma once

#include "aledg/basis.hpp"
#include "aledg/mesh2d.hpp"
#include "aledg/physics.hpp"
#include "aledg/scheme.hpp"

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace aledg {

/// Single-step ALE DG scheme on a moving triangulation.
///
/// Vertex velocities come from the fluid velocity at cell barycentres,
/// averaged per vertex, optionally smoothed. A step builds the cell-local
/// predictor, integrates volume and face terms at the time nodes on the
/// linearly moving mesh, moves the vertices, swaps edges of poor cells and
/// applies the limiters.
template <class Physics>
class Solver2D {
 public:
  using State = typename Physics::State;
  using Point = typename Physics::Point;
  using InitialCondition = std::function<State(const Vec2&)>;
  using Observer = std::function<void(const StepReport&)>;

  Solver2D(Physics physics, SimplicialMesh mesh, SchemeConfig config);

  void set_initial(const InitialCondition& f);

  const Physics& physics() const { return phys_; }
  const SchemeConfig& config() const { return cfg_; }
  const BasisSet& basis() const { return basis_; }
  const SimplicialMesh& mesh() const { return mesh_; }
  SimplicialMesh& mesh() { return mesh_; }
  const ModalSolution& solution() const { return u_; }
  ModalSolution& solution() { return u_; }
  double time() const { return time_; }
  int steps() const { return steps_; }

  State cell_average(int cell) const;
  /// Solution of `cell` at reference coordinates xi.
  State evaluate(int cell, const Vec2& xi) const;

  /// Raw vertex velocities followed by smoothing for a step towards
  /// `remaining`. Returns the smoothing path taken.
  std::string compute_vertex_velocities(double remaining);
  /// Stable step for the current velocities, capped by the orientation bound
  /// and by `remaining`.
  double compute_dt(double remaining) const;
  /// Advance by dt with the vertex velocities currently stored in the mesh.
  StepReport step(double dt);
  int advance(double final_time, const Observer& observer = {}, int max_steps = 10000000);

  void apply_limiters(StepReport& report);

  Eigen::VectorXd totals() const;
  double error_norm(const std::function<State(const Vec2&)>& reference, int var, Norm norm) const;
  double max_quality() const;
  double min_quality() const;

 private:
  Eigen::MatrixXd predictor_rhs(const Eigen::MatrixXd& U, const Eigen::Matrix2d& J, const Vec2& w0,
                                const Eigen::Matrix2d& Jw) const;
  bool admissible(const Eigen::MatrixXd& U) const;
  void limit_tvb();

  Physics phys_;
  SimplicialMesh mesh_;
  SchemeConfig cfg_;
  BasisSet basis_;
  QuadratureRule vol_;
  QuadratureRule face_rule_;
  QuadratureRule time_rule_;
  Eigen::MatrixXd phi_;
  Eigen::MatrixXd dphi_xi_;
  Eigen::MatrixXd dphi_eta_;
  // Basis values along local face i, forward (0) and reversed (1).
  std::array<std::array<Eigen::MatrixXd, 2>, 3> phi_face_;
  Eigen::MatrixXd check_phi_;
  Eigen::Matrix3d mid_phi_;
  Eigen::Matrix3d mid_phi_inv_;
  ModalSolution u_;
  double time_ = 0.0;
  int steps_ = 0;
  int limited_ = 0;
  std::string smoothing_path_ = "none";
  std::mt19937_64 rng_;
};

}  // namespace aledg
