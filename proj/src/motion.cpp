#include "aledg/motion.hpp"

#include <algorithm>
#include <cmath>

namespace aledg {

namespace {

// Cell corner seen from a vertex group; `offset` takes the cell frame to the
// frame of the group master.
struct Corner {
  int cell;
  int local;
  Vec2 offset;
};

std::vector<std::vector<Corner>> build_stars(const SimplicialMesh& mesh) {
  std::vector<std::vector<Corner>> stars(mesh.x.size());
  for (int c = 0; c < mesh.num_cells(); ++c)
    for (int j = 0; j < 3; ++j) {
      const int v = mesh.cells[c][j];
      const int m = mesh.master[v];
      stars[m].push_back({c, j, mesh.x[m] - mesh.x[v]});
    }
  return stars;
}

// Vertices not allowed to move freely: on an open, reflective or closed face.
std::vector<char> pinned_groups(const SimplicialMesh& mesh) {
  const std::vector<char> on_boundary = mesh.boundary_vertices();
  std::vector<char> pinned(mesh.x.size(), 0);
  for (int v = 0; v < mesh.num_vertices(); ++v)
    if (on_boundary[v]) pinned[mesh.master[v]] = 1;
  return pinned;
}

void scatter(const SimplicialMesh& mesh, std::vector<Vec2>& w) {
  for (int v = 0; v < mesh.num_vertices(); ++v) w[v] = w[mesh.master[v]];
}

Vec2 cell_mean(const SimplicialMesh& mesh, const std::vector<Vec2>& w, int c) {
  const auto& v = mesh.cells[c];
  return (w[v[0]] + w[v[1]] + w[v[2]]) / 3.0;
}

}  // namespace

std::vector<Vec2> average_vertex_velocity(const SimplicialMesh& mesh, const std::vector<Vec2>& cell_velocity) {
  std::vector<Vec2> sum(mesh.x.size(), Vec2::Zero());
  std::vector<int> count(mesh.x.size(), 0);
  for (int c = 0; c < mesh.num_cells(); ++c)
    for (int v : mesh.cells[c]) {
      sum[mesh.master[v]] += cell_velocity[c];
      ++count[mesh.master[v]];
    }
  std::vector<Vec2> w(mesh.x.size(), Vec2::Zero());
  for (int v = 0; v < mesh.num_vertices(); ++v)
    if (count[v] > 0) w[v] = sum[v] / count[v];
  scatter(mesh, w);
  return w;
}

void constrain_boundary_velocity(const SimplicialMesh& mesh, std::vector<Vec2>& w) {
  std::vector<std::vector<Vec2>> normals(mesh.x.size());
  for (const Face& f : mesh.faces) {
    if (!f.boundary() || f.kind != BoundaryKind::reflective) continue;
    const Vec2 nu = mesh.face_normal(f.cell[0], f.local[0]);
    for (int v : f.v) normals[mesh.master[v]].push_back(nu);
  }
  for (int m = 0; m < mesh.num_vertices(); ++m) {
    if (normals[m].empty()) continue;
    const Vec2 nu = normals[m].front();
    bool corner = false;
    for (const Vec2& n : normals[m])
      if (std::abs(n(0) * nu(1) - n(1) * nu(0)) > 1e-9) corner = true;
    w[m] = corner ? Vec2::Zero() : Vec2(w[m] - w[m].dot(nu) * nu);
  }
  scatter(mesh, w);
}

double diffusivity(double delta, const SmoothingConfig& cfg) {
  const double s = std::clamp((delta - cfg.delta_l) / (cfg.delta_u - cfg.delta_l), 0.0, 1.0);
  return cfg.eps0 + (1.0 - cfg.eps0) * s;
}

std::vector<Vec2> laplacian_smooth(const SimplicialMesh& mesh, const std::vector<Vec2>& w_in, double dt,
                                   const SmoothingConfig& cfg) {
  std::vector<Vec2> w = w_in;
  if (cfg.nsmooth == 0 || cfg.alpha == 1.0) return w;
  const auto stars = build_stars(mesh);
  const auto pinned = pinned_groups(mesh);

  // Distinct neighbours of each group: (vertex, offset into the master frame).
  std::vector<std::vector<std::pair<int, Vec2>>> nbrs(mesh.x.size());
  for (int m = 0; m < mesh.num_vertices(); ++m) {
    if (mesh.master[m] != m || pinned[m]) continue;
    for (const Corner& k : stars[m])
      for (int j = 1; j < 3; ++j) {
        const int v = mesh.cells[k.cell][(k.local + j) % 3];
        const Vec2 rel = mesh.x[v] + k.offset - mesh.x[m];
        bool dup = false;
        for (const auto& [u, off] : nbrs[m])
          if (mesh.master[u] == mesh.master[v] && (mesh.x[u] + off - mesh.x[m] - rel).norm() <= 1e-9 * rel.norm())
            dup = true;
        if (!dup) nbrs[m].emplace_back(v, k.offset);
      }
  }

  std::vector<Vec2> next = w;
  for (int s = 0; s < cfg.nsmooth; ++s) {
    for (int m = 0; m < mesh.num_vertices(); ++m) {
      if (mesh.master[m] != m || pinned[m] || nbrs[m].empty()) continue;
      Vec2 centroid = Vec2::Zero();
      for (const auto& [v, off] : nbrs[m]) centroid += mesh.x[v] + off + dt * w[v];
      centroid /= static_cast<double>(nbrs[m].size());
      next[m] = cfg.alpha * w[m] + (1.0 - cfg.alpha) * (centroid - mesh.x[m]) / dt;
    }
    scatter(mesh, next);
    w = next;
  }
  return w;
}

std::vector<Vec2> variable_diffusivity_smooth(const SimplicialMesh& mesh, const std::vector<Vec2>& w0,
                                              const SmoothingConfig& cfg) {
  std::vector<Vec2> w = w0;
  if (cfg.iterations == 0) return w;
  const auto stars = build_stars(mesh);
  const auto pinned = pinned_groups(mesh);

  // Face term of one star cell: flux = eps (A + a w_i), with w_i the centre.
  struct Term {
    int cell;
    int other;
    int f0, f1;  // endpoints of the outer face
    double eps;
    double g1, g2;  // weights of (w_m - w_c) and (w_c2 - w_m)
    double a;
  };
  std::vector<std::vector<Term>> terms(mesh.x.size());
  std::vector<double> patch(mesh.x.size(), 0.0);
  for (int m = 0; m < mesh.num_vertices(); ++m) {
    if (mesh.master[m] != m || pinned[m]) continue;
    double longest = 0.0;
    for (const Corner& k : stars[m]) {
      patch[m] += mesh.area(k.cell);
      for (int j = 1; j < 3; ++j)
        longest = std::max(longest, (mesh.vertex(k.cell, (k.local + j) % 3) - mesh.vertex(k.cell, k.local)).norm());
    }
    for (const Corner& k : stars[m]) {
      const int f = mesh.cell_faces[k.cell][k.local];
      const Face& face = mesh.faces[f];
      if (face.boundary()) continue;
      const int other = face.cell[0] == k.cell && face.local[0] == k.local ? face.cell[1] : face.cell[0];
      const Vec2 c = mesh.barycenter(k.cell);
      const Vec2 mid = mesh.face_midpoint(k.cell, k.local);
      const Vec2 c2 = mesh.barycenter(other) + mesh.neighbour_offset(f, k.cell);
      const Vec2 nu = mesh.face_normal(k.cell, k.local);
      const double len = (mesh.vertex(k.cell, (k.local + 1) % 3) - mesh.vertex(k.cell, (k.local + 2) % 3)).norm();
      const double d1 = (mid - c).norm(), d2 = (c2 - mid).norm();
      Term t;
      t.cell = k.cell;
      t.other = other;
      t.f0 = mesh.cells[k.cell][(k.local + 1) % 3];
      t.f1 = mesh.cells[k.cell][(k.local + 2) % 3];
      t.eps = diffusivity(len / longest, cfg) * longest * longest;
      t.g1 = 0.5 * len * (mid - c).dot(nu) / (d1 * d1);
      t.g2 = 0.5 * len * (c2 - mid).dot(nu) / (d2 * d2);
      t.a = std::min(0.0, -t.g1 / 3.0);
      terms[m].push_back(t);
    }
  }

  std::vector<Vec2> next = w;
  for (int it = 0; it < cfg.iterations; ++it) {
    for (int m = 0; m < mesh.num_vertices(); ++m) {
      if (mesh.master[m] != m || pinned[m]) continue;
      Vec2 num = patch[m] * w0[m];
      double den = patch[m];
      for (const Term& t : terms[m]) {
        const Vec2 wm = 0.5 * (w[t.f0] + w[t.f1]);
        const Vec2 flux = t.g1 * (wm - cell_mean(mesh, w, t.cell)) + t.g2 * (cell_mean(mesh, w, t.other) - wm);
        num += t.eps * (flux - t.a * w[m]);
        den -= t.eps * t.a;
      }
      next[m] = num / den;
    }
    scatter(mesh, next);
    w = next;
  }
  return w;
}

SmoothingResult smooth(const SimplicialMesh& mesh, const std::vector<Vec2>& w, double dt, double max_quality,
                       const SmoothingConfig& cfg) {
  if (cfg.kind == SmoothingKind::none) return {w, "none"};
  if (cfg.kind == SmoothingKind::laplacian || max_quality > cfg.fallback_quality)
    return {laplacian_smooth(mesh, w, dt, cfg), "laplacian"};
  return {variable_diffusivity_smooth(mesh, w, cfg), "variable_diffusivity"};
}

}  // namespace aledg
