#include "doctest.h"

#include "aledg/errors.hpp"
#include "aledg/solver1d.hpp"

#include <cmath>

using namespace aledg;

namespace {

double l2_energy(const Solver1D<AdvectionPhysics<1>>& s) {
  double e = 0.0;
  for (int c = 0; c < s.mesh().num_cells(); ++c) e += 0.5 * s.mesh().length(c) * s.solution()[c].squaredNorm();
  return e;
}

Solver1D<AdvectionPhysics<1>> advection(int degree, int cells) {
  SchemeConfig cfg;
  cfg.degree = degree;
  Solver1D<AdvectionPhysics<1>> s(AdvectionPhysics<1>{},
                                  Mesh1D::uniform(0.0, 1.0, cells, BoundaryKind::periodic, BoundaryKind::periodic), cfg);
  s.set_initial([](double x) { return AdvectionPhysics<1>::State(x < 0.5 ? 1.0 + x : 0.2); });
  return s;
}

}  // namespace

TEST_CASE("constant state survives random vertex velocities") {
  EulerPhysics<1> phys;
  const auto c = prim_to_cons<1>(prim1(1.3, 0.5, 0.8), phys.eos);
  for (int k = 1; k <= 3; ++k) {
    SchemeConfig cfg;
    cfg.degree = k;
    cfg.mode = MeshMode::moving;
    cfg.velocity_noise = 0.25;
    cfg.seed = 11;
    cfg.cfl = 0.5;
    Solver1D<EulerPhysics<1>> s(phys, Mesh1D::uniform(0.0, 1.0, 20, BoundaryKind::periodic, BoundaryKind::periodic), cfg);
    s.set_initial([&](double) { return c; });
    for (int n = 0; n < 100; ++n) {
      s.compute_vertex_velocities();
      s.step(s.compute_dt(1.0));
    }
    double dev = 0.0;
    for (int cell = 0; cell < 20; ++cell)
      for (double xi : {-1.0, 0.0, 1.0}) dev = std::max(dev, (s.evaluate(cell, xi) - c).cwiseAbs().maxCoeff());
    CHECK(dev < 1e-12);
  }
}

TEST_CASE("periodic totals are conserved") {
  EulerPhysics<1> phys;
  SchemeConfig cfg;
  cfg.degree = 2;
  cfg.mode = MeshMode::moving;
  cfg.velocity_noise = 0.25;
  cfg.cfl = 0.5;
  Solver1D<EulerPhysics<1>> s(phys, Mesh1D::uniform(0.0, 1.0, 40, BoundaryKind::periodic, BoundaryKind::periodic), cfg);
  s.set_initial([&](double x) {
    return prim_to_cons<1>(prim1(1.0 + 0.2 * std::sin(2.0 * M_PI * x), 0.4, 1.0 + 0.1 * std::cos(2.0 * M_PI * x)), phys.eos);
  });
  const Eigen::VectorXd t0 = s.totals();
  for (int n = 0; n < 30; ++n) {
    s.compute_vertex_velocities();
    s.step(s.compute_dt(1.0));
  }
  const Eigen::VectorXd t1 = s.totals();
  for (int v = 0; v < 3; ++v) CHECK(std::abs(t1(v) - t0(v)) <= 1e-13 * std::abs(t0(v)));
}

TEST_CASE("dissipation is proportional to |a - w|") {
  const double dt = 1e-5;
  double dec[3];
  const double ws[3] = {0.0, 0.5, 1.0};
  for (int i = 0; i < 3; ++i) {
    auto s = advection(2, 20);
    s.mesh().w.assign(21, ws[i]);
    const double e0 = l2_energy(s);
    s.step(dt);
    dec[i] = e0 - l2_energy(s);
  }
  CHECK(std::abs(dec[2]) < 1e-13);
  CHECK(dec[0] > 0.0);
  CHECK(dec[0] / dec[1] == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("static mesh keeps vertex velocities at zero") {
  auto s = advection(1, 10);
  s.compute_vertex_velocities();
  for (double w : s.mesh().w) CHECK(w == 0.0);
  CHECK(s.compute_dt(1e-6) == 1e-6);
}

TEST_CASE("dt formula") {
  EulerPhysics<1> phys;
  SchemeConfig cfg;
  cfg.degree = 1;
  Solver1D<EulerPhysics<1>> s(phys, Mesh1D::uniform(0.0, 1.0, 100, BoundaryKind::open, BoundaryKind::open), cfg);
  // |v| + c = 3 with c = sqrt(1.4 p / rho).
  const double cs = 3.0 - 1.0;
  s.set_initial([&](double) { return prim_to_cons<1>(prim1(1.4, 1.0, cs * cs), phys.eos); });
  s.compute_vertex_velocities();
  CHECK(s.compute_dt(1.0) == doctest::Approx(0.9 / 3.0 * 0.01 / 3.0).epsilon(1e-12));
}

TEST_CASE("step rejects a dt beyond the orientation bound") {
  auto s = advection(1, 2);
  s.mesh().w = {1.0, -1.0, 1.0};
  CHECK_THROWS_AS(s.step(0.3), TanglingError);
}
