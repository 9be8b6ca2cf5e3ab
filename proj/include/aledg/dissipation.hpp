#pragma once

#include "aledg/mesh1d.hpp"

#include <Eigen/Dense>

namespace aledg {

/// Semi-discrete upwind DG operator of u_t + a u_x = 0 seen from cells moving
/// with the uniform velocity w: dU/dt = -(a - w) A U.
///
/// U stacks the modal coefficients cell by cell. A depends only on the mesh,
/// the degree and the sign of a - w (which side is upwind). Requires a
/// uniform periodic mesh.
Eigen::MatrixXd linear_dissipation_operator(const Mesh1D& mesh, double a, double w, int degree);

/// Flattens a scalar modal solution cell by cell.
Eigen::VectorXd stack_modes(const ModalSolution& u);

}  // namespace aledg
