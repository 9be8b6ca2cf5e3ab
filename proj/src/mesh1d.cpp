#include "aledg/mesh1d.hpp"

#include "aledg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace aledg {

BoundaryKind parse_boundary_kind(const std::string& name) {
  if (name == "open") return BoundaryKind::open;
  if (name == "reflective") return BoundaryKind::reflective;
  if (name == "periodic") return BoundaryKind::periodic;
  if (name == "closed") return BoundaryKind::closed;
  throw ConfigError("boundary", "unknown boundary kind '" + name + "'");
}

std::string to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::open: return "open";
    case BoundaryKind::reflective: return "reflective";
    case BoundaryKind::periodic: return "periodic";
    case BoundaryKind::closed: return "closed";
  }
  return "unknown";
}

Mesh1D Mesh1D::uniform(double a, double b, int cells, BoundaryKind left, BoundaryKind right) {
  if (cells < 1 || !(b > a)) throw ConfigError("n", "uniform mesh needs cells >= 1 and b > a");
  if ((left == BoundaryKind::periodic) != (right == BoundaryKind::periodic))
    throw ConfigError("boundary", "periodic boundaries must be paired");
  Mesh1D mesh;
  mesh.left = left;
  mesh.right = right;
  mesh.x.resize(cells + 1);
  for (int i = 0; i <= cells; ++i) mesh.x[i] = a + (b - a) * i / cells;
  mesh.x[cells] = b;
  mesh.w.assign(cells + 1, 0.0);
  return mesh;
}

std::vector<double> average_vertex_velocity(const Mesh1D& mesh, const std::vector<double>& v) {
  const int n = mesh.num_cells();
  std::vector<double> w(n + 1, 0.0);
  for (int i = 1; i < n; ++i) w[i] = 0.5 * (v[i - 1] + v[i]);
  if (mesh.periodic()) {
    w[0] = w[n] = 0.5 * (v[n - 1] + v[0]);
    return w;
  }
  w[0] = mesh.left == BoundaryKind::reflective ? 0.0 : v[0];
  w[n] = mesh.right == BoundaryKind::reflective ? 0.0 : v[n - 1];
  return w;
}

double linearized_riemann_velocity(const PrimitiveState<1>& l, const PrimitiveState<1>& r, const EosParams& eos) {
  const double zl = l.rho * sound_speed(l, eos);
  const double zr = r.rho * sound_speed(r, eos);
  return (zl * l.vel(0) + zr * r.vel(0)) / (zl + zr) + (l.p - r.p) / (zl + zr);
}

void move(Mesh1D& mesh, double dt) {
  for (std::size_t i = 0; i < mesh.x.size(); ++i) mesh.x[i] += mesh.w[i] * dt;
  for (int i = 0; i < mesh.num_cells(); ++i)
    if (!(mesh.x[i + 1] > mesh.x[i]))
      throw TanglingError("move: vertices " + std::to_string(i) + " and " + std::to_string(i + 1) + " crossed");
}

double max_timestep_orientation(const Mesh1D& mesh, double safety) {
  double bound = std::numeric_limits<double>::infinity();
  for (int i = 0; i < mesh.num_cells(); ++i) {
    const double closing = mesh.w[i] - mesh.w[i + 1];
    if (closing > 0.0) bound = std::min(bound, (1.0 - safety) * mesh.length(i) / closing);
  }
  return bound;
}

namespace {

// One piece of a transfer: the source polynomial restricted to
// [src_a, src_b] (source reference coordinates) occupies [dst_a, dst_b] of
// the target reference interval.
struct Piece {
  const Eigen::MatrixXd* coeffs;
  double src_a, src_b, dst_a, dst_b;
};

Eigen::MatrixXd transfer(const BasisSet& basis, const std::vector<Piece>& pieces) {
  const QuadratureRule rule = quadrature_for(1, 2 * basis.degree() + 1);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(basis.size(), pieces.front().coeffs->cols());
  Eigen::MatrixXd src_pts(1, rule.size());
  Eigen::MatrixXd dst_pts(1, rule.size());
  for (const Piece& p : pieces) {
    for (int q = 0; q < rule.size(); ++q) {
      const double s = 0.5 * (rule.points(0, q) + 1.0);
      src_pts(0, q) = p.src_a + s * (p.src_b - p.src_a);
      dst_pts(0, q) = p.dst_a + s * (p.dst_b - p.dst_a);
    }
    const Eigen::MatrixXd values = basis.values(src_pts) * (*p.coeffs);
    const Eigen::MatrixXd phi = basis.values(dst_pts);
    const double scale = 0.5 * (p.dst_b - p.dst_a);
    for (int q = 0; q < rule.size(); ++q)
      out += (scale * rule.weights(q)) * phi.row(q).transpose() * values.row(q);
  }
  return out;
}

}  // namespace

AdaptStats adapt(Mesh1D& mesh, ModalSolution& u, const BasisSet& basis, double h_min, double h_max,
                 double slack) {
  const bool do_split = h_max > 0.0 && std::isfinite(h_max);
  const bool do_merge = h_min > 0.0;
  if (do_split && do_merge && h_min >= h_max) throw ConfigError("adapt.h_min", "h_min must be below h_max");
  AdaptStats stats;

  if (do_merge) {
    const double lower = h_min * (1.0 - slack);
    for (int i = 0; i < mesh.num_cells() && mesh.num_cells() > 1;) {
      if (mesh.length(i) >= lower) {
        ++i;
        continue;
      }
      // Merge partner: the shorter neighbour, ties to the left; the periodic
      // wrap is never merged across.
      int partner;
      if (i == 0) partner = 1;
      else if (i == mesh.num_cells() - 1) partner = i - 1;
      else partner = mesh.length(i - 1) <= mesh.length(i + 1) ? i - 1 : i + 1;
      const int a = std::min(i, partner);
      const int b = a + 1;
      const double la = mesh.length(a);
      const double lb = mesh.length(b);
      const double split = -1.0 + 2.0 * la / (la + lb);
      const Eigen::MatrixXd ua = u[a];
      const Eigen::MatrixXd ub = u[b];
      u[a] = transfer(basis, {{&ua, -1.0, 1.0, -1.0, split}, {&ub, -1.0, 1.0, split, 1.0}});
      u.erase(u.begin() + b);
      mesh.x.erase(mesh.x.begin() + b);
      mesh.w.erase(mesh.w.begin() + b);
      ++stats.merges;
      i = a;
    }
  }

  if (do_split) {
    const double limit = h_max * (1.0 + slack);
    for (int i = 0; i < mesh.num_cells();) {
      if (mesh.length(i) <= limit) {
        ++i;
        continue;
      }
      const Eigen::MatrixXd parent = u[i];
      const Eigen::MatrixXd left = transfer(basis, {{&parent, -1.0, 0.0, -1.0, 1.0}});
      const Eigen::MatrixXd right = transfer(basis, {{&parent, 0.0, 1.0, -1.0, 1.0}});
      mesh.x.insert(mesh.x.begin() + i + 1, mesh.barycenter(i));
      mesh.w.insert(mesh.w.begin() + i + 1, 0.5 * (mesh.w[i] + mesh.w[i + 1]));
      u[i] = left;
      u.insert(u.begin() + i + 1, right);
      ++stats.splits;
    }
  }
  return stats;
}

}  // namespace aledg
