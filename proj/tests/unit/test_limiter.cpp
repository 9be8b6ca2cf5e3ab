#include "doctest.h"

#include "aledg/errors.hpp"
#include "aledg/limiter.hpp"
#include "aledg/physics.hpp"
#include "aledg/solver1d.hpp"

#include <cmath>
#include <random>

using namespace aledg;

TEST_CASE("minmod tables") {
  CHECK(minmod({1.0, 2.0, 3.0}) == 1.0);
  CHECK(minmod({1.0, -2.0, 3.0}) == 0.0);
  CHECK(minmod({-4.0, -2.0, -3.0}) == -2.0);
  CHECK(minmod({0.0, 2.0}) == 0.0);
  CHECK(minmod_tvb(0.5, {-3.0, 2.0}, 100.0, 0.1) == 0.5);
  CHECK(minmod_tvb(0.5, {-3.0, 2.0}, 0.0, 0.1) == 0.0);
  CHECK(minmod_tvb(1e3, {2.0}, 1e12, 0.1) == 1e3);

  std::mt19937 gen(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double a = u(gen), b = u(gen), c = u(gen);
    CHECK(minmod({-a, -b, -c}) == -minmod({a, b, c}));
  }
}

TEST_CASE("rebalancing example") {
  Eigen::VectorXd d(3);
  d << 2.0, -1.0, 0.0;
  const Eigen::VectorXd r = rebalance(d);
  CHECK(r(0) == doctest::Approx(1.0));
  CHECK(r(1) == doctest::Approx(-1.0));
  CHECK(r(2) == 0.0);
  CHECK(std::abs(r.sum()) < 1e-15);

  Eigen::VectorXd z(3);
  z << 0.5, -0.25, -0.25;
  CHECK((rebalance(z) - z).norm() == 0.0);
}

TEST_CASE("psi basis on the reference cell") {
  const Eigen::Matrix3d a = psi_basis({0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0});
  // Rows are ordered by the face opposite each vertex: row 2 belongs to the
  // midpoint of (v0, v1), row 1 to (v0, v2), row 0 to (v1, v2).
  CHECK((a.row(2) - Eigen::RowVector3d(1.0, 0.0, -2.0)).norm() < 1e-12);
  CHECK((a.row(1) - Eigen::RowVector3d(1.0, -2.0, 0.0)).norm() < 1e-12);
  CHECK((a.row(0) - Eigen::RowVector3d(-1.0, 2.0, 2.0)).norm() < 1e-12);
}

TEST_CASE("psi basis is nodal at midpoints and sums to one") {
  std::mt19937 gen(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    Eigen::Vector2d p0(u(gen), u(gen)), p1 = p0 + Eigen::Vector2d(1.0 + u(gen) * 0.3, 0.2 * u(gen)),
                                        p2 = p0 + Eigen::Vector2d(0.2 * u(gen), 1.0 + 0.3 * u(gen));
    const Eigen::Matrix3d a = psi_basis(p0, p1, p2);
    const std::array<Eigen::Vector2d, 3> m = {0.5 * (p1 + p2), 0.5 * (p2 + p0), 0.5 * (p0 + p1)};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(std::abs(a.row(i).dot(Eigen::Vector3d(1.0, m[j](0), m[j](1))) - (i == j ? 1.0 : 0.0)) < 1e-12);
    for (int s = 0; s < 5; ++s) {
      const Eigen::Vector3d x(1.0, u(gen), u(gen));
      CHECK(std::abs((a * x).sum() - 1.0) < 1e-12);
    }
  }
  CHECK_THROWS_AS(psi_basis({0.0, 0.0}, {1.0, 1.0}, {2.0, 2.0}), DegenerateCellError);
}

TEST_CASE("cone weights are non-negative and reproduce the midpoint") {
  const Eigen::Vector2d bc(1.0 / 3.0, 1.0 / 3.0);
  const std::array<Eigen::Vector2d, 3> nb = {Eigen::Vector2d(2.0 / 3.0, 2.0 / 3.0), Eigen::Vector2d(-1.0 / 3.0, 1.0 / 3.0),
                                             Eigen::Vector2d(1.0 / 3.0, -1.0 / 3.0)};
  const std::array<Eigen::Vector2d, 3> mids = {Eigen::Vector2d(0.5, 0.5), Eigen::Vector2d(0.0, 0.5),
                                               Eigen::Vector2d(0.5, 0.0)};
  for (const auto& m : mids) {
    const auto cw = cone_weights(m, bc, nb);
    REQUIRE(cw.has_value());
    CHECK(cw->alpha.minCoeff() >= 0.0);
    const Eigen::Vector2d rec = bc + cw->alpha(0) * (nb[cw->j] - bc) + cw->alpha(1) * (nb[cw->k] - bc);
    CHECK((rec - m).norm() < 1e-12);
  }
}

TEST_CASE("2D increments: constant patch and linear data pass through") {
  AdvectionPhysics<2> phys;
  LimiterConfig cfg;
  cfg.kind = LimiterKind::tvb_2d;
  using S = AdvectionPhysics<2>::State;
  using P = AdvectionPhysics<2>::Point;
  std::vector<FaceSlope<S, P>> flat(3, {S(0.0), S(0.0), P(1.0, 0.0)});
  CHECK_FALSE(limit_increments(phys, S(1.0), flat, cfg, 0.1).has_value());

  // Linear data: u~(m_i) = du_bar(m_i) exactly, nu >= 1.
  std::vector<FaceSlope<S, P>> lin = {{S(0.2), S(0.2), P(1.0, 0.0)}, {S(-0.5), S(-0.5), P(0.0, 1.0)},
                                      {S(0.3), S(0.3), P(-1.0, 0.0)}};
  CHECK_FALSE(limit_increments(phys, S(1.0), lin, cfg, 0.1).has_value());

  // Mixed signs on one face activate the limiter; the result sums to zero.
  std::vector<FaceSlope<S, P>> mixed = {{S(0.2), S(-0.2), P(1.0, 0.0)}, {S(-0.5), S(-0.5), P(0.0, 1.0)},
                                        {S(0.3), S(0.3), P(-1.0, 0.0)}};
  const auto d = limit_increments(phys, S(1.0), mixed, cfg, 0.1);
  REQUIRE(d.has_value());
  CHECK(std::abs((*d)[0](0) + (*d)[1](0) + (*d)[2](0)) < 1e-15);
}

TEST_CASE("characteristic and componentwise paths agree for a scalar law") {
  AdvectionPhysics<2> phys;
  LimiterConfig a, b;
  a.characteristic = true;
  b.characteristic = false;
  using S = AdvectionPhysics<2>::State;
  using P = AdvectionPhysics<2>::Point;
  std::vector<FaceSlope<S, P>> f = {{S(0.4), S(-0.1), P(1.0, 0.0)}, {S(-0.5), S(-0.2), P(0.0, 1.0)},
                                    {S(0.1), S(0.3), P(-1.0, 0.0)}};
  const auto da = limit_increments(phys, S(1.0), f, a, 0.1);
  const auto db = limit_increments(phys, S(1.0), f, b, 0.1);
  REQUIRE(da.has_value());
  REQUIRE(db.has_value());
  for (int i = 0; i < 3; ++i) CHECK((*da)[i](0) == (*db)[i](0));
}

TEST_CASE("characteristic round trip on unlimited data") {
  EulerPhysics<2> phys;
  const auto u = prim_to_cons<2>(prim2(1.0, 0.3, -0.2, 1.5), phys.eos);
  const auto [R, Rinv] = phys.eigenvectors(u, Vec<2>(0.6, 0.8));
  EulerPhysics<2>::State x;
  x << 0.1, -0.2, 0.3, 0.05;
  CHECK((R * (Rinv * x) - x).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("positivity limiter") {
  BasisSet b(1, 1);
  const QuadratureRule rule = quadrature_for(1, 3);
  Eigen::MatrixXd pts(1, rule.size() + 2);
  pts << rule.points, Eigen::RowVector2d(-1.0, 1.0);
  const Eigen::MatrixXd phi = b.values(pts);

  // Density with average 1 dipping to -0.1 at xi = -1; zero momentum, E = 2.5.
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2, 3);
  c(0, 0) = std::sqrt(2.0);
  c(1, 0) = 1.1 / std::sqrt(1.5);
  c(0, 2) = 2.5 * std::sqrt(2.0);
  const double eps = 1e-13;
  const Eigen::MatrixXd before = c;
  CHECK(positivity_limit(c, phi, 1, 1.4, eps));
  CHECK((phi * c).col(0).minCoeff() == doctest::Approx(eps).epsilon(1e-6));
  const double theta = (1.0 - eps) / (1.0 + 0.1);
  CHECK(c(1, 0) == doctest::Approx(theta * before(1, 0)).epsilon(1e-14));
  CHECK(c(0, 0) == before(0, 0));
  CHECK(c(0, 2) == before(0, 2));

  // Idempotent, and a positive polynomial is left alone.
  const Eigen::MatrixXd once = c;
  positivity_limit(c, phi, 1, 1.4, eps);
  CHECK((c - once).norm() < 1e-15);

  Eigen::MatrixXd ok = Eigen::MatrixXd::Zero(2, 3);
  ok(0, 0) = std::sqrt(2.0);
  ok(1, 0) = 0.1;
  ok(0, 2) = 2.5 * std::sqrt(2.0);
  CHECK_FALSE(positivity_limit(ok, phi, 1, 1.4, eps));

  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(2, 3);
  bad(0, 0) = -1.0;
  CHECK_THROWS_AS(positivity_limit(bad, phi, 1, 1.4, eps), InvalidStateError);
}

namespace {

Solver1D<AdvectionPhysics<1>> make_limited(int degree, const std::function<double(double)>& f) {
  SchemeConfig cfg;
  cfg.degree = degree;
  cfg.limiter.kind = LimiterKind::tvd_1d;
  Solver1D<AdvectionPhysics<1>> s(AdvectionPhysics<1>{}, Mesh1D::uniform(0.0, 1.0, 10, BoundaryKind::periodic, BoundaryKind::periodic), cfg);
  s.set_initial([&](double x) { return AdvectionPhysics<1>::State(f(x)); });
  return s;
}

}  // namespace

TEST_CASE("1D TVD limiter") {
  SUBCASE("constant solution is untouched") {
    auto s = make_limited(2, [](double) { return 3.0; });
    const ModalSolution before = s.solution();
    StepReport r;
    s.apply_limiters(r);
    CHECK(r.limited_cells == 0);
    for (int c = 0; c < 10; ++c) CHECK((s.solution()[c] - before[c]).norm() == 0.0);
  }
  SUBCASE("linear data away from the periodic seam is untouched") {
    auto s = make_limited(1, [](double x) { return 2.0 * x; });
    const ModalSolution before = s.solution();
    StepReport r;
    s.apply_limiters(r);
    // Only the two cells touching the seam see the jump of the sawtooth.
    for (int c = 1; c < 9; ++c) CHECK((s.solution()[c] - before[c]).norm() < 1e-14);
  }
  SUBCASE("an isolated spike loses its slope; averages are kept") {
    auto s = make_limited(2, [](double x) { return (x > 0.5 && x < 0.6) ? 1.0 + 5.0 * (x - 0.5) : 0.0; });
    std::vector<double> avg;
    for (int c = 0; c < 10; ++c) avg.push_back(s.cell_average(c)(0));
    StepReport r;
    s.apply_limiters(r);
    CHECK(std::abs(s.solution()[5](1, 0)) < 1e-15);
    CHECK(std::abs(s.solution()[5](2, 0)) < 1e-15);
    for (int c = 0; c < 10; ++c) CHECK(s.cell_average(c)(0) == doctest::Approx(avg[c]).epsilon(1e-15));
  }
}
