#pragma once

#include "aledg/euler.hpp"
#include "aledg/mesh1d.hpp"

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace aledg {

/// Primitive state (rho, vx, vy, p); vy is zero for 1D cases.
struct Primitive {
  double rho = 1.0;
  double vx = 0.0;
  double vy = 0.0;
  double p = 1.0;
};

enum class ReferenceKind { exact_function, exact_riemann, isentropic_characteristics, none };

std::string to_string(ReferenceKind kind);

/// Benchmark definition: domain, gas, initial data, boundaries and reference.
struct CaseSpec {
  std::string name;
  int dim = 1;
  /// x0, x1, y0, y1 (y extents unused in 1D).
  std::array<double, 4> domain{0.0, 1.0, 0.0, 0.0};
  double gamma = 1.4;
  double final_time = 0.0;
  std::function<Primitive(const Eigen::Vector2d&)> initial;
  /// left, right, bottom, top.
  std::array<BoundaryKind, 4> boundary{BoundaryKind::open, BoundaryKind::open, BoundaryKind::open,
                                       BoundaryKind::open};
  ReferenceKind reference = ReferenceKind::none;
  /// Pointwise reference at (x, t); empty when reference is none.
  std::function<Primitive(const Eigen::Vector2d&, double)> exact;
  /// Cells (1D) or blocks per direction (2D).
  int nx = 100;
  int ny = 1;
  /// Energy deposited around the origin on top of the initial data (Sedov).
  double point_energy = 0.0;
  /// Split each 2D block into four triangles instead of two.
  bool cross_split = false;
  std::string description;
};

/// Names of all registered cases in registry order.
std::vector<std::string> case_names();

/// Throws LookupError for unknown names.
CaseSpec get_case(const std::string& name);

/// Adds V to the x velocity of the initial data and of the reference.
CaseSpec boosted(CaseSpec spec, double V);

/// Throws CapabilityError when the case has no reference.
Primitive reference_solution(const CaseSpec& spec, const Eigen::Vector2d& x, double t);

/// Isentropic gamma = 3 flow from rho0 with zero initial velocity and p = rho^3
/// on a periodic interval of length `period`, solved along characteristics
/// of the Riemann invariants v + c and v - c.
Primitive isentropic_solution(const std::function<double(double)>& rho0, double period, double x, double t);

/// Isentropic vortex advected with (1, 0), wrapped into the periodic box
/// [-10, 10]^2.
Primitive vortex_solution(const Eigen::Vector2d& x, double t, double beta = 10.0, double gamma = 1.4);

template <int Dim>
Eigen::Matrix<double, Dim + 2, 1> to_conserved(const Primitive& w, const EosParams& eos) {
  if constexpr (Dim == 1)
    return prim_to_cons<1>(prim1(w.rho, w.vx, w.p), eos);
  else
    return prim_to_cons<2>(prim2(w.rho, w.vx, w.vy, w.p), eos);
}

}  // namespace aledg
