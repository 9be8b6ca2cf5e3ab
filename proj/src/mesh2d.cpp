#include "aledg/mesh2d.hpp"

#include "aledg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace aledg {

namespace {

double cross(const Vec2& a, const Vec2& b) { return a(0) * b(1) - a(1) * b(0); }

int find_root(std::vector<int>& parent, int i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

void unite(std::vector<int>& parent, int a, int b) {
  a = find_root(parent, a);
  b = find_root(parent, b);
  if (a != b) parent[std::max(a, b)] = std::min(a, b);
}

// Smallest t > 0 with a t^2 + b t + c = 0, or +inf.
double first_positive_root(double a, double b, double c) {
  const double inf = std::numeric_limits<double>::infinity();
  const double scale = std::abs(a) + std::abs(b) + std::abs(c);
  if (scale == 0.0) return inf;
  if (std::abs(a) <= 1e-14 * scale) {
    if (b >= 0.0) return inf;
    return -c / b;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return inf;
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  double best = inf;
  for (double r : {q / a, q != 0.0 ? c / q : inf})
    if (r > 0.0 && r < best) best = r;
  return best;
}

}  // namespace

double orientation_det(const Vec2& a, const Vec2& b, const Vec2& c) { return cross(b - a, c - a); }

double triangle_quality(const Vec2& a, const Vec2& b, const Vec2& c) {
  const double area = 0.5 * orientation_det(a, b, c);
  if (!(area > 0.0)) throw DegenerateCellError("quality: non-positive area", -1);
  const double s2 = (b - a).squaredNorm() + (c - b).squaredNorm() + (a - c).squaredNorm();
  return s2 / (4.0 * std::sqrt(3.0) * area) - 1.0;
}

SimplicialMesh::SimplicialMesh(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> cell_list,
                               const std::vector<BoundarySegment>& boundary)
    : x(std::move(vertices)), cells(std::move(cell_list)) {
  w.assign(x.size(), Vec2::Zero());
  build(boundary);
}

void SimplicialMesh::build(const std::vector<BoundarySegment>& boundary) {
  const int nv = num_vertices();
  for (int c = 0; c < num_cells(); ++c) {
    for (int v : cells[c])
      if (v < 0 || v >= nv) throw DegenerateCellError("mesh: vertex index out of range", c);
  }
  check_orientation();

  std::map<std::pair<int, int>, int> edge_face;
  faces.clear();
  cell_faces.assign(cells.size(), {-1, -1, -1});
  for (int c = 0; c < num_cells(); ++c) {
    for (int i = 0; i < 3; ++i) {
      const int a = cells[c][(i + 1) % 3];
      const int b = cells[c][(i + 2) % 3];
      const auto key = std::minmax(a, b);
      auto it = edge_face.find(key);
      if (it == edge_face.end()) {
        Face f;
        f.v = {a, b};
        f.cell = {c, -1};
        f.local = {i, -1};
        edge_face.emplace(key, static_cast<int>(faces.size()));
        cell_faces[c][i] = static_cast<int>(faces.size());
        faces.push_back(f);
      } else {
        Face& f = faces[it->second];
        if (f.cell[1] >= 0) throw DegenerateCellError("mesh: edge shared by more than two cells", c);
        if (f.v[0] != b || f.v[1] != a) throw DegenerateCellError("mesh: inconsistent cell orientation", c);
        f.cell[1] = c;
        f.local[1] = i;
        cell_faces[c][i] = it->second;
      }
    }
  }

  std::vector<int> segment_face(boundary.size(), -1);
  for (std::size_t s = 0; s < boundary.size(); ++s) {
    const auto key = std::minmax(boundary[s].v0, boundary[s].v1);
    auto it = edge_face.find(key);
    if (it == edge_face.end() || !faces[it->second].boundary())
      throw LookupError("mesh: boundary segment " + std::to_string(s) + " is not a boundary edge");
    faces[it->second].kind = boundary[s].kind;
    segment_face[s] = it->second;
  }

  // Pair periodic faces and glue them into interior faces carrying a shift.
  std::vector<int> partner(faces.size(), -1);
  for (std::size_t s = 0; s < boundary.size(); ++s) {
    if (boundary[s].kind != BoundaryKind::periodic || boundary[s].partner < 0) continue;
    const int p = boundary[s].partner;
    if (p >= static_cast<int>(boundary.size()) || boundary[p].kind != BoundaryKind::periodic)
      throw LookupError("mesh: invalid periodic partner of segment " + std::to_string(s));
    partner[segment_face[s]] = segment_face[p];
    partner[segment_face[p]] = segment_face[s];
  }
  const int nf = static_cast<int>(faces.size());
  for (int f = 0; f < nf; ++f) {
    if (faces[f].kind != BoundaryKind::periodic || partner[f] >= 0) continue;
    const Vec2 ta = x[faces[f].v[1]] - x[faces[f].v[0]];
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int g = 0; g < nf; ++g) {
      if (g == f || faces[g].kind != BoundaryKind::periodic || partner[g] >= 0) continue;
      const Vec2 tb = x[faces[g].v[1]] - x[faces[g].v[0]];
      if ((ta + tb).norm() > 1e-9 * ta.norm()) continue;
      const Vec2 shift = x[faces[g].v[1]] - x[faces[f].v[0]];
      if (std::abs(cross(shift, ta)) > 1e-9 * ta.norm() * std::max(1.0, shift.norm())) continue;
      if (shift.norm() < best_dist) {
        best_dist = shift.norm();
        best = g;
      }
    }
    if (best < 0) throw LookupError("mesh: periodic face without a partner");
    partner[f] = best;
    partner[best] = f;
  }

  std::vector<int> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<char> dead(faces.size(), 0);
  for (int f = 0; f < nf; ++f) {
    const int g = partner[f];
    if (g < 0 || g < f) continue;
    Face& a = faces[f];
    const Face& b = faces[g];
    const Vec2 shift = x[b.v[1]] - x[a.v[0]];
    if ((x[b.v[0]] - x[a.v[1]] - shift).norm() > 1e-9 * std::max(1.0, shift.norm()))
      throw LookupError("mesh: periodic faces are not translates of each other");
    a.cell[1] = b.cell[0];
    a.local[1] = b.local[0];
    a.shift = shift;
    unite(parent, a.v[0], b.v[1]);
    unite(parent, a.v[1], b.v[0]);
    dead[g] = 1;
  }
  std::vector<int> remap(faces.size(), -1);
  std::vector<Face> kept;
  for (int f = 0; f < nf; ++f) {
    if (dead[f]) continue;
    remap[f] = static_cast<int>(kept.size());
    kept.push_back(faces[f]);
  }
  faces = std::move(kept);
  for (int f = 0; f < static_cast<int>(faces.size()); ++f)
    for (int s = 0; s < 2; ++s)
      if (faces[f].cell[s] >= 0) cell_faces[faces[f].cell[s]][faces[f].local[s]] = f;

  master.resize(nv);
  for (int v = 0; v < nv; ++v) master[v] = find_root(parent, v);
}

SimplicialMesh SimplicialMesh::structured(int nx, int ny, double x0, double x1, double y0, double y1,
                                          BoundaryKind left, BoundaryKind right, BoundaryKind bottom,
                                          BoundaryKind top, BlockSplit split) {
  if (nx < 1 || ny < 1 || !(x1 > x0) || !(y1 > y0)) throw ConfigError("n", "structured mesh needs positive extents");
  if ((left == BoundaryKind::periodic) != (right == BoundaryKind::periodic) ||
      (bottom == BoundaryKind::periodic) != (top == BoundaryKind::periodic))
    throw ConfigError("boundary", "periodic boundaries must be paired");
  std::vector<Vec2> pts;
  auto grid = [&](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      pts.emplace_back(i == nx ? x1 : x0 + (x1 - x0) * i / nx, j == ny ? y1 : y0 + (y1 - y0) * j / ny);
  std::vector<std::array<int, 3>> tris;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int p00 = grid(i, j), p10 = grid(i + 1, j), p11 = grid(i + 1, j + 1), p01 = grid(i, j + 1);
      if (split == BlockSplit::diagonal) {
        tris.push_back({p00, p10, p11});
        tris.push_back({p00, p11, p01});
      } else {
        const int c = static_cast<int>(pts.size());
        pts.push_back(0.25 * (pts[p00] + pts[p10] + pts[p11] + pts[p01]));
        tris.push_back({p00, p10, c});
        tris.push_back({p10, p11, c});
        tris.push_back({p11, p01, c});
        tris.push_back({p01, p00, c});
      }
    }
  }
  std::vector<BoundarySegment> segs;
  for (int i = 0; i < nx; ++i)
    segs.push_back({grid(i, 0), grid(i + 1, 0), bottom, bottom == BoundaryKind::periodic ? nx + i : -1});
  for (int i = 0; i < nx; ++i)
    segs.push_back({grid(i, ny), grid(i + 1, ny), top, top == BoundaryKind::periodic ? i : -1});
  const int base = 2 * nx;
  for (int j = 0; j < ny; ++j)
    segs.push_back({grid(0, j), grid(0, j + 1), left, left == BoundaryKind::periodic ? base + ny + j : -1});
  for (int j = 0; j < ny; ++j)
    segs.push_back({grid(nx, j), grid(nx, j + 1), right, right == BoundaryKind::periodic ? base + j : -1});
  return SimplicialMesh(std::move(pts), std::move(tris), segs);
}

double SimplicialMesh::det(int cell) const {
  return orientation_det(vertex(cell, 0), vertex(cell, 1), vertex(cell, 2));
}

Vec2 SimplicialMesh::barycenter(int cell) const {
  return (vertex(cell, 0) + vertex(cell, 1) + vertex(cell, 2)) / 3.0;
}

double SimplicialMesh::quality(int cell) const {
  try {
    return triangle_quality(vertex(cell, 0), vertex(cell, 1), vertex(cell, 2));
  } catch (const DegenerateCellError& e) {
    throw DegenerateCellError(e.what(), cell);
  }
}

double SimplicialMesh::inradius(int cell) const {
  const Vec2 a = vertex(cell, 0), b = vertex(cell, 1), c = vertex(cell, 2);
  const double perimeter = (b - a).norm() + (c - b).norm() + (a - c).norm();
  return 2.0 * area(cell) / perimeter;
}

Vec2 SimplicialMesh::face_midpoint(int cell, int i) const {
  return 0.5 * (vertex(cell, (i + 1) % 3) + vertex(cell, (i + 2) % 3));
}

Vec2 SimplicialMesh::face_normal(int cell, int i) const {
  const Vec2 t = vertex(cell, (i + 2) % 3) - vertex(cell, (i + 1) % 3);
  return Vec2(t(1), -t(0)).normalized();
}

Vec2 SimplicialMesh::neighbour_offset(int f, int cell) const {
  return faces[f].cell[0] == cell ? Vec2(-faces[f].shift) : Vec2(faces[f].shift);
}

int SimplicialMesh::neighbour(int cell, int i) const {
  const Face& f = faces[cell_faces[cell][i]];
  if (f.boundary()) return -1;
  return (f.cell[0] == cell && f.local[0] == i) ? f.cell[1] : f.cell[0];
}

AffineMap SimplicialMesh::map(int cell) const {
  return AffineMap::triangle(vertex(cell, 0), vertex(cell, 1), vertex(cell, 2));
}

std::vector<std::vector<std::pair<int, int>>> SimplicialMesh::vertex_cells() const {
  std::vector<std::vector<std::pair<int, int>>> out(x.size());
  for (int c = 0; c < num_cells(); ++c)
    for (int j = 0; j < 3; ++j) out[cells[c][j]].emplace_back(c, j);
  return out;
}

std::vector<std::vector<int>> SimplicialMesh::clone_groups() const {
  std::vector<std::vector<int>> out(x.size());
  for (int v = 0; v < num_vertices(); ++v) out[master[v]].push_back(v);
  return out;
}

std::vector<char> SimplicialMesh::boundary_vertices() const {
  std::vector<char> out(x.size(), 0);
  for (const Face& f : faces)
    if (f.boundary()) out[f.v[0]] = out[f.v[1]] = 1;
  return out;
}

void SimplicialMesh::check_orientation() const {
  for (int c = 0; c < num_cells(); ++c)
    if (!(det(c) > 0.0)) throw DegenerateCellError("mesh: cell " + std::to_string(c) + " has non-positive area", c);
}

double SimplicialMesh::total_area() const {
  double a = 0.0;
  for (int c = 0; c < num_cells(); ++c) a += area(c);
  return a;
}

Vec2 barycentric_velocity(const SimplicialMesh& mesh, int cell, const Vec2& p) {
  const Vec2 a = mesh.vertex(cell, 0), b = mesh.vertex(cell, 1), c = mesh.vertex(cell, 2);
  const double d = orientation_det(a, b, c);
  const double l1 = orientation_det(a, p, c) / d;
  const double l2 = orientation_det(a, b, p) / d;
  const auto& v = mesh.cells[cell];
  return (1.0 - l1 - l2) * mesh.w[v[0]] + l1 * mesh.w[v[1]] + l2 * mesh.w[v[2]];
}

Vec2 boundary_vertex_velocity(BoundaryKind kind, const Vec2& w0, const Vec2& nu) {
  if (kind == BoundaryKind::reflective) return w0 - 2.0 * w0.dot(nu) * nu;
  return w0;
}

double max_timestep_orientation(const SimplicialMesh& mesh, double safety) {
  double bound = std::numeric_limits<double>::infinity();
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const auto& v = mesh.cells[c];
    const Vec2 e1 = mesh.x[v[1]] - mesh.x[v[0]], e2 = mesh.x[v[2]] - mesh.x[v[0]];
    const Vec2 f1 = mesh.w[v[1]] - mesh.w[v[0]], f2 = mesh.w[v[2]] - mesh.w[v[0]];
    const double d0 = cross(e1, e2);
    if (!(d0 > 0.0)) throw DegenerateCellError("orientation bound: degenerate cell " + std::to_string(c), c);
    const double d1 = cross(e1, f2) + cross(f1, e2);
    const double d2 = cross(f1, f2);
    bound = std::min(bound, first_positive_root(d2, d1, (1.0 - safety) * d0));
  }
  return bound;
}

void move(SimplicialMesh& mesh, double dt) {
  for (int v = 0; v < mesh.num_vertices(); ++v) mesh.x[v] += dt * mesh.w[v];
  for (int c = 0; c < mesh.num_cells(); ++c)
    if (!(mesh.det(c) > 0.0)) throw TanglingError("move: cell " + std::to_string(c) + " lost its orientation");
}

std::vector<Eigen::MatrixXd> transfer_solution(const BasisSet& basis, const std::vector<AffineMap>& old_maps,
                                               const std::vector<Eigen::MatrixXd>& old_coeffs,
                                               const std::vector<AffineMap>& new_maps,
                                               const std::vector<InterpolationRegion>& regions) {
  const QuadratureRule rule = quadrature_for(2, 2 * basis.degree());
  const int nvar = static_cast<int>(old_coeffs.front().cols());
  std::vector<Eigen::MatrixXd> out(new_maps.size(), Eigen::MatrixXd::Zero(basis.size(), nvar));
  std::vector<double> covered(new_maps.size(), 0.0);
  std::vector<Eigen::Matrix2d> old_inv, new_inv;
  for (const auto& m : old_maps) old_inv.push_back(m.jacobian.inverse());
  for (const auto& m : new_maps) new_inv.push_back(m.jacobian.inverse());
  Eigen::MatrixXd xi_old(2, rule.size()), xi_new(2, rule.size());
  for (const auto& r : regions) {
    const double d = orientation_det(r.corners[0], r.corners[1], r.corners[2]);
    if (d < 0.0) throw DecompositionError("transfer: region with negative orientation");
    if (d == 0.0) continue;
    const AffineMap rm = AffineMap::triangle(r.corners[0], r.corners[1], r.corners[2]);
    for (int q = 0; q < rule.size(); ++q) {
      const Vec2 p = rm(rule.points.col(q));
      xi_old.col(q) = old_inv[r.old_cell] * (p - old_maps[r.old_cell].origin);
      xi_new.col(q) = new_inv[r.new_cell] * (p - new_maps[r.new_cell].origin);
    }
    const Eigen::MatrixXd u = basis.values(xi_old) * old_coeffs[r.old_cell];
    const Eigen::MatrixXd phi = basis.values(xi_new);
    const double scale = d / std::abs(new_maps[r.new_cell].det());
    out[r.new_cell] += scale * phi.transpose() * (rule.weights.asDiagonal() * u);
    covered[r.new_cell] += 0.5 * d;
  }
  for (std::size_t i = 0; i < new_maps.size(); ++i) {
    const double a = 0.5 * std::abs(new_maps[i].det());
    if (std::abs(covered[i] - a) > 1e-12 * std::max(a, 1e-300) + 1e-15 * a)
      throw DecompositionError("transfer: regions do not tile new cell " + std::to_string(i));
  }
  return out;
}

namespace {

void relink(SimplicialMesh& mesh, int f, int old_cell, int old_local, int new_cell, int new_local) {
  Face& face = mesh.faces[f];
  for (int s = 0; s < 2; ++s) {
    if (face.cell[s] == old_cell && face.local[s] == old_local) {
      face.cell[s] = new_cell;
      face.local[s] = new_local;
      mesh.cell_faces[new_cell][new_local] = f;
      return;
    }
  }
  throw LookupError("edge swap: broken face link");
}

}  // namespace

bool edge_swap(SimplicialMesh& mesh, ModalSolution& solution, const BasisSet& basis, int f, double hysteresis) {
  const Face face = mesh.faces[f];
  if (face.boundary() || face.shift.squaredNorm() > 0.0) return false;
  const int c0 = face.cell[0], c1 = face.cell[1];
  if (c0 == c1) return false;
  const int l0 = face.local[0], l1 = face.local[1];
  const int vc = mesh.cells[c0][l0];
  const int va = mesh.cells[c0][(l0 + 1) % 3];
  const int vb = mesh.cells[c0][(l0 + 2) % 3];
  const int vd = mesh.cells[c1][l1];
  if (vc == vd) return false;
  const Vec2 a = mesh.x[va], b = mesh.x[vb], c = mesh.x[vc], d = mesh.x[vd];

  const double scale = (b - a).squaredNorm() + (d - c).squaredNorm();
  const double dn0 = orientation_det(c, a, d), dn1 = orientation_det(d, b, c);
  if (!(dn0 > 1e-12 * scale) || !(dn1 > 1e-12 * scale)) return false;
  const double q_old = std::max(mesh.quality(c0), mesh.quality(c1));
  const double q_new = std::max(triangle_quality(c, a, d), triangle_quality(d, b, c));
  if (!(q_new < q_old - hysteresis)) return false;

  // Intersection of the diagonals a-b and c-d.
  const double t = cross(c - a, d - c) / cross(b - a, d - c);
  const Vec2 o = a + t * (b - a);
  const std::vector<AffineMap> old_maps = {mesh.map(c0), mesh.map(c1)};
  const std::vector<AffineMap> new_maps = {AffineMap::triangle(c, a, d), AffineMap::triangle(d, b, c)};
  const std::vector<InterpolationRegion> regions = {
      {{a, d, o}, 1, 0}, {{d, b, o}, 1, 1}, {{b, c, o}, 0, 1}, {{c, a, o}, 0, 0}};
  auto moved = transfer_solution(basis, old_maps, {solution[c0], solution[c1]}, new_maps, regions);

  const int f_ca = mesh.cell_faces[c0][(l0 + 2) % 3];  // opposite b in c0
  const int f_bc = mesh.cell_faces[c0][(l0 + 1) % 3];  // opposite a in c0
  const int f_ad = mesh.cell_faces[c1][(l1 + 1) % 3];  // opposite b in c1
  const int f_db = mesh.cell_faces[c1][(l1 + 2) % 3];  // opposite a in c1
  const int l0_ca = (l0 + 2) % 3, l0_bc = (l0 + 1) % 3, l1_ad = (l1 + 1) % 3, l1_db = (l1 + 2) % 3;

  mesh.cells[c0] = {vc, va, vd};
  mesh.cells[c1] = {vd, vb, vc};
  // New c0 = [c, a, d]: face 0 = (a, d), face 1 = (d, c), face 2 = (c, a).
  // New c1 = [d, b, c]: face 0 = (b, c), face 1 = (c, d), face 2 = (d, b).
  // Relink via a temporary cell id so faces shared by c0 and c1 stay unique.
  const int tmp = -2;
  auto park = [&](int g, int cell, int local) {
    Face& fc = mesh.faces[g];
    for (int s = 0; s < 2; ++s)
      if (fc.cell[s] == cell && fc.local[s] == local) {
        fc.cell[s] = tmp;
        fc.local[s] = (cell == c0 ? 0 : 10) + local;
        return;
      }
    throw LookupError("edge swap: broken face link");
  };
  park(f_ca, c0, l0_ca);
  park(f_bc, c0, l0_bc);
  park(f_ad, c1, l1_ad);
  park(f_db, c1, l1_db);
  relink(mesh, f_ad, tmp, 10 + l1_ad, c0, 0);
  relink(mesh, f_ca, tmp, l0_ca, c0, 2);
  relink(mesh, f_bc, tmp, l0_bc, c1, 0);
  relink(mesh, f_db, tmp, 10 + l1_db, c1, 2);
  Face& diag = mesh.faces[f];
  diag.v = {vd, vc};
  diag.cell = {c0, c1};
  diag.local = {1, 1};
  mesh.cell_faces[c0][1] = f;
  mesh.cell_faces[c1][1] = f;

  solution[c0] = std::move(moved[0]);
  solution[c1] = std::move(moved[1]);
  return true;
}

int improve_mesh(SimplicialMesh& mesh, ModalSolution& solution, const BasisSet& basis, double threshold,
                 double hysteresis, int max_swaps) {
  if (max_swaps < 0) max_swaps = 10 * mesh.num_cells();
  std::vector<int> stack;
  for (int c = 0; c < mesh.num_cells(); ++c)
    if (mesh.quality(c) > threshold) stack.push_back(c);
  int swaps = 0;
  while (!stack.empty() && swaps < max_swaps) {
    const int c = stack.back();
    stack.pop_back();
    if (mesh.quality(c) <= threshold) continue;
    for (int i = 0; i < 3; ++i) {
      const int f = mesh.cell_faces[c][i];
      const int other = mesh.faces[f].cell[0] == c ? mesh.faces[f].cell[1] : mesh.faces[f].cell[0];
      if (!edge_swap(mesh, solution, basis, f, hysteresis)) continue;
      ++swaps;
      for (int k : {c, other})
        if (mesh.quality(k) > threshold) stack.push_back(k);
      break;
    }
  }
  return swaps;
}

}  // namespace aledg
