#include "doctest.h"

#include "aledg/basis.hpp"
#include "aledg/errors.hpp"

#include <cmath>
#include <random>

using namespace aledg;

TEST_CASE("constant mode and its gradient") {
  BasisSet b(1, 3);
  Eigen::VectorXd xi(1);
  for (double x : {-1.0, -0.3, 0.0, 0.7, 1.0}) {
    xi(0) = x;
    CHECK(b.eval(xi, 0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(std::abs(b.eval_grad(xi, 0)(0)) < 1e-15);
  }
  CHECK(b.size() == 4);
  CHECK(BasisSet(2, 3).size() == 10);
  CHECK(BasisSet::modes_for(2, 2) == 6);
}

TEST_CASE("gram matrix is the identity in 1D and 2D") {
  for (int dim : {1, 2}) {
    for (int k = 1; k <= 3; ++k) {
      BasisSet b(dim, k);
      const QuadratureRule rule = quadrature_for(dim, 2 * k);
      const Eigen::MatrixXd phi = b.values(rule.points);
      const Eigen::MatrixXd gram = phi.transpose() * rule.weights.asDiagonal() * phi;
      CHECK((gram - Eigen::MatrixXd::Identity(b.size(), b.size())).cwiseAbs().maxCoeff() < 1e-12);
      for (int m = 1; m < b.size(); ++m) CHECK(std::abs(rule.weights.dot(phi.col(m))) < 1e-13);
    }
  }
}

TEST_CASE("quadrature exactness and weights") {
  const QuadratureRule g2 = gauss_legendre(2);
  double s = 0.0;
  for (int q = 0; q < g2.size(); ++q) s += g2.weights(q) * g2.points(0, q) * g2.points(0, q);
  CHECK(s == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  const QuadratureRule tri = quadrature_for(2, 5);
  CHECK(tri.weights.sum() == doctest::Approx(0.5).epsilon(1e-14));
  double x2y2 = 0.0;
  for (int q = 0; q < tri.size(); ++q) x2y2 += tri.weights(q) * std::pow(tri.points(0, q), 2) * std::pow(tri.points(1, q), 2);
  // Exact: 2! 2! / 6! = 1/180.
  CHECK(x2y2 == doctest::Approx(1.0 / 180.0).epsilon(1e-14));

  for (int dim : {1, 2})
    for (int deg = 1; deg <= 9; ++deg) CHECK(quadrature_for(dim, deg).weights.minCoeff() > 0.0);
  CHECK_THROWS_AS(quadrature_for(2, 99), CapabilityError);
}

TEST_CASE("time rules pair with the predictor degree") {
  CHECK(time_quadrature(1).size() == 1);
  CHECK(time_quadrature(1).points(0, 0) == doctest::Approx(0.5));
  CHECK(time_quadrature(2).size() == 2);
  CHECK(time_quadrature(3).size() == 3);
  CHECK(time_quadrature(3).weights.sum() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("projection reproduces polynomials of degree k") {
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 1; k <= 3; ++k) {
    BasisSet b1(1, k);
    std::vector<double> c(k + 1);
    for (double& v : c) v = u(gen);
    auto poly = [&](double x) {
      double acc = 0.0;
      for (int i = k; i >= 0; --i) acc = acc * x + c[i];
      return acc;
    };
    const AffineMap map = AffineMap::interval(0.3, 1.1);
    const Eigen::MatrixXd coeffs =
        project(b1, map, [&](const Eigen::VectorXd& x) { return Eigen::VectorXd::Constant(1, poly(x(0))); }, 1);
    for (double xi : {-0.9, -0.2, 0.4, 1.0}) {
      Eigen::VectorXd p(1);
      p(0) = xi;
      double val = 0.0;
      for (int m = 0; m < b1.size(); ++m) val += coeffs(m, 0) * b1.eval(p, m);
      CHECK(std::abs(val - poly(map(p)(0))) < 1e-12);
    }

    BasisSet b2(2, k);
    const AffineMap tri = AffineMap::triangle({0.1, 0.2}, {1.3, 0.4}, {0.5, 1.7});
    auto f2 = [&](const Eigen::VectorXd& x) {
      return Eigen::VectorXd::Constant(1, std::pow(x(0) - 0.2 * x(1), k) + x(1));
    };
    const Eigen::MatrixXd c2 = project(b2, tri, f2, 1);
    Eigen::VectorXd p(2);
    p << 0.2, 0.3;
    double val = 0.0;
    for (int m = 0; m < b2.size(); ++m) val += c2(m, 0) * b2.eval(p, m);
    CHECK(std::abs(val - f2(tri(p))(0)) < 1e-12);
  }
}

TEST_CASE("constant capture and positive averages of the smooth profile") {
  BasisSet b(1, 2);
  const AffineMap map = AffineMap::interval(-1.0, 3.0);
  const Eigen::MatrixXd c = project(b, map, [](const Eigen::VectorXd&) { return Eigen::VectorXd::Constant(1, 3.5); }, 1);
  CHECK(c(0, 0) * constant_mode_value(1) == doctest::Approx(3.5).epsilon(1e-14));
  CHECK(std::abs(c(1, 0)) < 1e-14);
  CHECK(std::abs(c(2, 0)) < 1e-14);

  const double h = 0.1;
  for (int i = 0; i < 100; ++i) {
    const AffineMap cell = AffineMap::interval(-5.0 + i * h, -5.0 + (i + 1) * h);
    const Eigen::MatrixXd ci = project(
        b, cell, [](const Eigen::VectorXd& x) { return Eigen::VectorXd::Constant(1, 1.0 + std::exp(-10.0 * x(0) * x(0))); }, 1);
    CHECK(ci(0, 0) > 0.0);
  }
}
