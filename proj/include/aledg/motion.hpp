#pragma once

#include "aledg/mesh2d.hpp"
#include "aledg/scheme.hpp"

#include <string>
#include <vector>

namespace aledg {

/// Mean of the cell velocities around each vertex. Clones of a periodic
/// vertex share the mean over the union of their cells.
std::vector<Vec2> average_vertex_velocity(const SimplicialMesh& mesh, const std::vector<Vec2>& cell_velocity);

/// Keeps boundary vertices on the boundary: tangential part on reflective
/// walls, zero at corners between walls of different direction.
void constrain_boundary_velocity(const SimplicialMesh& mesh, std::vector<Vec2>& w);

/// Piecewise-linear diffusivity: eps0 below delta_l, 1 above delta_u.
double diffusivity(double delta, const SmoothingConfig& cfg);

/// `nsmooth` sweeps of neighbour-centroid smoothing:
/// w <- alpha w + (1 - alpha) (X(x + w dt) - x) / dt.
/// Non-periodic boundary vertices keep their input velocity.
std::vector<Vec2> laplacian_smooth(const SimplicialMesh& mesh, const std::vector<Vec2>& w, double dt,
                                   const SmoothingConfig& cfg);

/// Jacobi relaxation of -div(eps grad w) + w = w0 over the cell star of each
/// vertex. Non-periodic boundary vertices keep their input velocity.
std::vector<Vec2> variable_diffusivity_smooth(const SimplicialMesh& mesh, const std::vector<Vec2>& w0,
                                              const SmoothingConfig& cfg);

struct SmoothingResult {
  std::vector<Vec2> w;
  std::string path;
};

/// none: identity. Variable diffusivity unless max_quality exceeds
/// cfg.fallback_quality, then Laplacian.
SmoothingResult smooth(const SimplicialMesh& mesh, const std::vector<Vec2>& w, double dt, double max_quality,
                       const SmoothingConfig& cfg);

}  // namespace aledg
