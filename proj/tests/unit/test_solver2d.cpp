#include "doctest.h"

#include "aledg/errors.hpp"
#include "aledg/solver2d.hpp"

#include <cmath>

using namespace aledg;

namespace {

SimplicialMesh periodic_grid(int n) {
  return SimplicialMesh::structured(n, n, 0.0, 1.0, 0.0, 1.0, BoundaryKind::periodic, BoundaryKind::periodic,
                                    BoundaryKind::periodic, BoundaryKind::periodic);
}

}  // namespace

TEST_CASE("2D constant state survives random vertex velocities") {
  EulerPhysics<2> phys;
  const auto c = prim_to_cons<2>(prim2(1.2, 0.6, -0.3, 0.9), phys.eos);
  for (int k = 1; k <= 3; ++k) {
    SchemeConfig cfg;
    cfg.degree = k;
    cfg.mode = MeshMode::moving;
    cfg.velocity_noise = 0.25;
    cfg.cfl = 0.5;
    Solver2D<EulerPhysics<2>> s(phys, periodic_grid(4), cfg);
    s.set_initial([&](const Vec2&) { return c; });
    for (int n = 0; n < 20; ++n) {
      s.compute_vertex_velocities(1.0);
      s.step(s.compute_dt(1.0));
    }
    double dev = 0.0;
    for (int cell = 0; cell < s.mesh().num_cells(); ++cell)
      for (const Vec2& xi : {Vec2(0, 0), Vec2(1, 0), Vec2(0, 1), Vec2(1.0 / 3, 1.0 / 3)})
        dev = std::max(dev, (s.evaluate(cell, xi) - c).cwiseAbs().maxCoeff());
    CHECK(dev < 1e-12);
  }
}

TEST_CASE("2D periodic totals are conserved with swaps") {
  EulerPhysics<2> phys;
  SchemeConfig cfg;
  cfg.degree = 2;
  cfg.mode = MeshMode::moving;
  cfg.velocity_noise = 0.25;
  cfg.cfl = 0.5;
  cfg.smoothing.kind = SmoothingKind::none;
  Solver2D<EulerPhysics<2>> s(phys, periodic_grid(6), cfg);
  s.set_initial([&](const Vec2& x) {
    return prim_to_cons<2>(prim2(x(0) < 0.5 ? 1.0 : 0.5, 0.5 * std::sin(2 * M_PI * x(1)), 0.3, x(0) < 0.5 ? 1.0 : 0.4),
                           phys.eos);
  });
  const Eigen::VectorXd t0 = s.totals();
  int swaps = 0;
  for (int n = 0; n < 30; ++n) {
    s.compute_vertex_velocities(1.0);
    swaps += s.step(s.compute_dt(1.0)).swaps;
  }
  const Eigen::VectorXd t1 = s.totals();
  for (int v = 0; v < 4; ++v) CHECK(std::abs(t1(v) - t0(v)) <= 1e-12 * std::max(1.0, std::abs(t0(v))));
  s.mesh().check_orientation();
  CHECK(swaps > 0);
}

TEST_CASE("2D static mesh and dt") {
  EulerPhysics<2> phys;
  SchemeConfig cfg;
  Solver2D<EulerPhysics<2>> s(phys, periodic_grid(4), cfg);
  // |v| + c = 3.
  s.set_initial([&](const Vec2&) { return prim_to_cons<2>(prim2(1.4, 0.6, 0.8, 4.0), phys.eos); });
  s.compute_vertex_velocities(1.0);
  for (const Vec2& w : s.mesh().w) CHECK(w.norm() == 0.0);
  double h = 1e300;
  for (int c = 0; c < s.mesh().num_cells(); ++c) h = std::min(h, 2.0 * s.mesh().inradius(c));
  CHECK(s.compute_dt(1.0) == doctest::Approx(0.9 / 3.0 * h / 3.0).epsilon(1e-12));
  CHECK(s.compute_dt(1e-7) == 1e-7);
}

TEST_CASE("1D limiter kind is rejected in 2D") {
  SchemeConfig cfg;
  cfg.limiter.kind = LimiterKind::tvd_1d;
  CHECK_THROWS_AS(Solver2D<EulerPhysics<2>>(EulerPhysics<2>{}, periodic_grid(2), cfg), CapabilityError);
}

TEST_CASE("2D advection with w = a has no dissipation") {
  SchemeConfig cfg;
  cfg.degree = 2;
  AdvectionPhysics<2> phys;
  phys.a = Vec2(1.0, 0.5);
  auto energy = [](const Solver2D<AdvectionPhysics<2>>& s) {
    double e = 0.0;
    for (int c = 0; c < s.mesh().num_cells(); ++c) e += s.mesh().det(c) * s.solution()[c].squaredNorm();
    return e;
  };
  double dec[2];
  for (int i = 0; i < 2; ++i) {
    Solver2D<AdvectionPhysics<2>> s(phys, periodic_grid(6), cfg);
    s.set_initial([](const Vec2& x) { return AdvectionPhysics<2>::State(x(0) < 0.5 ? 1.0 + x(1) : 0.2); });
    s.mesh().w.assign(s.mesh().num_vertices(), i == 0 ? Vec2::Zero() : phys.a);
    const double e0 = energy(s);
    s.step(1e-4);
    dec[i] = e0 - energy(s);
  }
  CHECK(dec[0] > 0.0);
  CHECK(std::abs(dec[1]) < 1e-13);
}
