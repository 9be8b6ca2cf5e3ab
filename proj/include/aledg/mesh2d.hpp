#pragma once

#include "aledg/basis.hpp"
#include "aledg/mesh1d.hpp"

#include <Eigen/Dense>

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace aledg {

using Vec2 = Eigen::Vector2d;

/// Edge of the triangulation. Endpoints run counter-clockwise in cell[0].
/// Periodic faces join two cells whose frames differ by `shift`: a point p
/// of the face seen from cell[0] is p + shift seen from cell[1].
struct Face {
  std::array<int, 2> v{-1, -1};
  std::array<int, 2> cell{-1, -1};
  std::array<int, 2> local{-1, -1};
  BoundaryKind kind = BoundaryKind::open;
  Vec2 shift = Vec2::Zero();

  bool boundary() const { return cell[1] < 0; }
  bool periodic() const { return !boundary() && kind == BoundaryKind::periodic; }
};

/// One line of the boundary section of a mesh file.
struct BoundarySegment {
  int v0 = -1;
  int v1 = -1;
  BoundaryKind kind = BoundaryKind::open;
  int partner = -1;
};

enum class BlockSplit { diagonal, cross };

/// Oriented triangulation with moving vertices.
///
/// Local face i of a cell is the edge opposite its local vertex i. Vertices
/// duplicated across periodic boundaries share a `master` and always carry
/// the same velocity.
class SimplicialMesh {
 public:
  std::vector<Vec2> x;
  std::vector<Vec2> w;
  std::vector<std::array<int, 3>> cells;
  std::vector<Face> faces;
  std::vector<std::array<int, 3>> cell_faces;
  std::vector<int> master;

  SimplicialMesh() = default;
  /// Builds faces, adjacency and periodic pairing. Unlisted boundary edges
  /// are open. Periodic segments without a partner are matched by
  /// translation. Throws DegenerateCellError for a non-positive cell.
  SimplicialMesh(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> cells,
                 const std::vector<BoundarySegment>& boundary);

  /// nx x ny rectangular blocks, each split into two (diagonal) or four
  /// (cross) triangles. Boundary kinds: left, right, bottom, top.
  static SimplicialMesh structured(int nx, int ny, double x0, double x1, double y0, double y1, BoundaryKind left,
                                   BoundaryKind right, BoundaryKind bottom, BoundaryKind top,
                                   BlockSplit split = BlockSplit::diagonal);

  int num_cells() const { return static_cast<int>(cells.size()); }
  int num_vertices() const { return static_cast<int>(x.size()); }

  Vec2 vertex(int cell, int j) const { return x[cells[cell][j]]; }
  double det(int cell) const;
  double area(int cell) const { return 0.5 * det(cell); }
  Vec2 barycenter(int cell) const;
  double quality(int cell) const;
  double inradius(int cell) const;
  /// Midpoint of local face i of the cell, in the cell's frame.
  Vec2 face_midpoint(int cell, int i) const;
  /// Unit outward normal of local face i of the cell.
  Vec2 face_normal(int cell, int i) const;
  /// Offset taking the frame of cell[1] of face f to that of `cell`.
  Vec2 neighbour_offset(int f, int cell) const;
  /// Neighbour across local face i, or -1 on a boundary.
  int neighbour(int cell, int i) const;
  AffineMap map(int cell) const;

  /// Per-vertex list of (cell, local index) pairs.
  std::vector<std::vector<std::pair<int, int>>> vertex_cells() const;
  /// Vertices of each clone group, indexed by master.
  std::vector<std::vector<int>> clone_groups() const;

  /// Throws DegenerateCellError for the first cell with non-positive area.
  void check_orientation() const;
  /// Per-vertex flag: lies on a non-periodic boundary face.
  std::vector<char> boundary_vertices() const;

  double total_area() const;

 private:
  void build(const std::vector<BoundarySegment>& boundary);
};

/// Signed area measure of (a, b, c): positive for counter-clockwise order.
double orientation_det(const Vec2& a, const Vec2& b, const Vec2& c);

/// (sum of squared sides) / (4 sqrt(3) area) - 1; zero for an equilateral
/// triangle. Throws DegenerateCellError for a non-positive area.
double triangle_quality(const Vec2& a, const Vec2& b, const Vec2& c);

/// Barycentric interpolation of vertex velocities at point p of a cell.
Vec2 barycentric_velocity(const SimplicialMesh& mesh, int cell, const Vec2& p);

/// Reflective: w0 - 2 (w0 . nu) nu. Other kinds return w0.
Vec2 boundary_vertex_velocity(BoundaryKind kind, const Vec2& w0, const Vec2& nu);

/// Largest dt keeping every signed area at least `safety` times its current
/// value under linear vertex motion. +inf when no cell shrinks. Throws
/// DegenerateCellError for a non-positive cell.
double max_timestep_orientation(const SimplicialMesh& mesh, double safety = 0.1);

/// x += w dt; throws TanglingError if a cell loses its orientation.
void move(SimplicialMesh& mesh, double dt);

/// Sub-triangle of a remeshed patch lying in one old and one new cell.
struct InterpolationRegion {
  std::array<Vec2, 3> corners;
  int old_cell = -1;
  int new_cell = -1;
};

/// L2 projection of the old solution onto new cells, region by region.
/// `old_maps[j]` and `old_coeffs[j]` describe old cell j, `new_maps[i]` new
/// cell i. Throws DecompositionError when the regions do not tile the new
/// cells.
std::vector<Eigen::MatrixXd> transfer_solution(const BasisSet& basis, const std::vector<AffineMap>& old_maps,
                                               const std::vector<Eigen::MatrixXd>& old_coeffs,
                                               const std::vector<AffineMap>& new_maps,
                                               const std::vector<InterpolationRegion>& regions);

/// Swap of the diagonal of the quadrilateral around interior face f. The
/// swap is accepted when the quad is strictly convex and the larger new
/// quality undercuts the larger old one by `hysteresis`. On acceptance the
/// mesh and the solution are updated and true is returned.
bool edge_swap(SimplicialMesh& mesh, ModalSolution& solution, const BasisSet& basis, int f, double hysteresis = 0.05);

/// Stack-driven swapping of cells with quality above `threshold`. Returns the
/// number of swaps.
int improve_mesh(SimplicialMesh& mesh, ModalSolution& solution, const BasisSet& basis, double threshold,
                 double hysteresis = 0.05, int max_swaps = -1);

/// Line-oriented mesh file: `meshdim 2`, `vertices N` + `id x y`,
/// `cells M` + `id v0 v1 v2`, `boundary B` + `v0 v1 tag [partner]`.
SimplicialMesh read_mesh(const std::string& path);
void write_mesh(const SimplicialMesh& mesh, const std::string& path);

}  // namespace aledg
