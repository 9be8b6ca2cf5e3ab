#include "doctest.h"

#include "aledg/errors.hpp"
#include "aledg/mesh1d.hpp"

#include <cmath>
#include <random>

using namespace aledg;

TEST_CASE("average vertex velocity") {
  Mesh1D m = Mesh1D::uniform(0.0, 1.0, 3, BoundaryKind::open, BoundaryKind::open);
  auto w = average_vertex_velocity(m, {1.0, 1.0, 1.0});
  for (double x : w) CHECK(x == 1.0);
  w = average_vertex_velocity(m, {0.0, 2.0, 4.0});
  CHECK(w[1] == 1.0);
  CHECK(w[2] == 3.0);
  CHECK(w[0] == 0.0);
  CHECK(w[3] == 4.0);

  m.left = m.right = BoundaryKind::reflective;
  w = average_vertex_velocity(m, {1.0, 2.0, 3.0});
  CHECK(w[0] == 0.0);
  CHECK(w[3] == 0.0);

  m.left = m.right = BoundaryKind::periodic;
  w = average_vertex_velocity(m, {1.0, 2.0, 4.0});
  CHECK(w[0] == w[3]);
  CHECK(w[0] == 2.5);
}

TEST_CASE("linearized Riemann velocity") {
  const EosParams eos(1.4);
  CHECK(linearized_riemann_velocity(prim1(1.0, 0.3, 1.0), prim1(1.0, 0.3, 1.0), eos) == doctest::Approx(0.3));
  CHECK(linearized_riemann_velocity(prim1(1.0, 0.0, 1.0), prim1(1.0, 0.0, 0.5), eos) ==
        doctest::Approx(0.5 / (std::sqrt(1.4) + std::sqrt(0.7))).epsilon(1e-12));
  CHECK(linearized_riemann_velocity(prim1(1.0, 0.0, 1.0), prim1(1.0, 0.0, 0.5), eos) ==
        doctest::Approx(0.2475395).epsilon(1e-6));
  CHECK(std::abs(linearized_riemann_velocity(prim1(0.7, 0.4, 2.0), prim1(0.7, -0.4, 2.0), eos)) < 1e-15);
}

TEST_CASE("move and the orientation bound") {
  Mesh1D m = Mesh1D::uniform(0.0, 1.0, 4, BoundaryKind::open, BoundaryKind::open);
  m.w.assign(5, 1.0);
  CHECK(std::isinf(max_timestep_orientation(m)));
  move(m, 0.1);
  CHECK(m.x[0] == doctest::Approx(0.1));
  CHECK(m.x[4] == doctest::Approx(1.1));

  Mesh1D pair = Mesh1D::uniform(0.0, 1.0, 1, BoundaryKind::open, BoundaryKind::open);
  pair.w = {1.0, -1.0};
  CHECK(max_timestep_orientation(pair, 0.0) == doctest::Approx(0.5));
  CHECK(max_timestep_orientation(pair, 0.1) == doctest::Approx(0.45));
  Mesh1D a = pair;
  move(a, 0.49);
  CHECK(a.x[1] > a.x[0]);
  Mesh1D b = pair;
  CHECK_THROWS_AS(move(b, 0.5), TanglingError);

  Mesh1D still = pair;
  still.w = {0.0, 0.0};
  move(still, 3.0);
  CHECK(still.x == pair.x);
}

namespace {

double total(const Mesh1D& m, const ModalSolution& u, int var) {
  double s = 0.0;
  for (int c = 0; c < m.num_cells(); ++c) s += m.length(c) * u[c](0, var) * constant_mode_value(1);
  return s;
}

}  // namespace

TEST_CASE("adaptation") {
  BasisSet b(1, 2);
  SUBCASE("identity inside the bounds") {
    Mesh1D m = Mesh1D::uniform(0.0, 1.0, 10, BoundaryKind::open, BoundaryKind::open);
    ModalSolution u(10, Eigen::MatrixXd::Ones(3, 2));
    const auto before = m.x;
    const AdaptStats s = adapt(m, u, b, 0.05, 0.2);
    CHECK(s.splits == 0);
    CHECK(s.merges == 0);
    CHECK(m.x == before);
  }
  SUBCASE("split keeps constants and halves the cell") {
    Mesh1D m = Mesh1D::uniform(0.0, 0.1, 1, BoundaryKind::open, BoundaryKind::open);
    ModalSolution u(1, Eigen::MatrixXd::Zero(3, 1));
    u[0](0, 0) = 2.0 / constant_mode_value(1);
    const AdaptStats s = adapt(m, u, b, 0.0, 0.05);
    CHECK(s.splits == 1);
    REQUIRE(m.num_cells() == 2);
    CHECK(m.length(0) == doctest::Approx(0.05));
    for (const auto& c : u) {
      CHECK(c(0, 0) * constant_mode_value(1) == doctest::Approx(2.0).epsilon(1e-14));
      CHECK(std::abs(c(1, 0)) < 1e-14);
      CHECK(std::abs(c(2, 0)) < 1e-14);
    }
  }
  SUBCASE("random data: integrals conserved and lengths bounded") {
    std::mt19937 gen(4);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    Mesh1D m;
    m.x = {0.0};
    for (int i = 0; i < 40; ++i) m.x.push_back(m.x.back() + 0.002 + 0.3 * u01(gen));
    m.w.assign(m.x.size(), 0.0);
    ModalSolution u(40);
    for (auto& c : u) c = Eigen::MatrixXd::Random(3, 3);
    const double t0 = total(m, u, 0), t1 = total(m, u, 1), t2 = total(m, u, 2);
    const AdaptStats s = adapt(m, u, b, 0.05, 0.1);
    CHECK(s.splits > 0);
    CHECK(s.merges > 0);
    CHECK(total(m, u, 0) == doctest::Approx(t0).epsilon(1e-13));
    CHECK(total(m, u, 1) == doctest::Approx(t1).epsilon(1e-13));
    CHECK(total(m, u, 2) == doctest::Approx(t2).epsilon(1e-13));
    for (int c = 0; c < m.num_cells(); ++c) CHECK(m.length(c) <= 0.1 * 1.1 + 1e-12);
  }
  SUBCASE("contradictory bounds") {
    Mesh1D m = Mesh1D::uniform(0.0, 1.0, 2, BoundaryKind::open, BoundaryKind::open);
    ModalSolution u(2, Eigen::MatrixXd::Zero(3, 1));
    CHECK_THROWS_AS(adapt(m, u, b, 0.2, 0.1), ConfigError);
  }
}
