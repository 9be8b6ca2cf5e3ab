#pragma once

#include "aledg/basis.hpp"
#include "aledg/euler.hpp"

#include <string>
#include <vector>

namespace aledg {

enum class BoundaryKind { open, reflective, periodic, closed };

BoundaryKind parse_boundary_kind(const std::string& name);
std::string to_string(BoundaryKind kind);

/// Moving 1D mesh: vertices x_0 < ... < x_N with one velocity per vertex.
/// With periodic ends, x_N is the clone of x_0 shifted by the period.
struct Mesh1D {
  std::vector<double> x;
  std::vector<double> w;
  BoundaryKind left = BoundaryKind::open;
  BoundaryKind right = BoundaryKind::open;

  int num_cells() const { return static_cast<int>(x.size()) - 1; }
  double length(int cell) const { return x[cell + 1] - x[cell]; }
  double barycenter(int cell) const { return 0.5 * (x[cell] + x[cell + 1]); }
  bool periodic() const { return left == BoundaryKind::periodic; }
  double period() const { return x.back() - x.front(); }

  static Mesh1D uniform(double a, double b, int cells, BoundaryKind left, BoundaryKind right);
};

/// Arithmetic mean of the fluid velocities of the cells sharing each vertex.
/// Periodic ends share the mean of both end cells; reflective ends are held
/// at zero; open and closed ends follow their single neighbour.
std::vector<double> average_vertex_velocity(const Mesh1D& mesh, const std::vector<double>& cell_velocity);

/// Velocity of the linearised Riemann problem between two traces.
double linearized_riemann_velocity(const PrimitiveState<1>& left, const PrimitiveState<1>& right,
                                   const EosParams& eos);

/// Advance every vertex by w dt; throws TanglingError if ordering breaks.
void move(Mesh1D& mesh, double dt);

/// Largest dt keeping every cell at least `safety` times its current length.
double max_timestep_orientation(const Mesh1D& mesh, double safety = 0.1);

struct AdaptStats {
  int splits = 0;
  int merges = 0;
};

/// Merge cells shorter than h_min into their shorter neighbour, then split
/// cells longer than h_max, with conservative L2 transfer of the solution.
AdaptStats adapt(Mesh1D& mesh, ModalSolution& solution, const BasisSet& basis, double h_min, double h_max,
                 double slack = 0.1);

}  // namespace aledg
