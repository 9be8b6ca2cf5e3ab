#include "doctest.h"

#include "aledg/errors.hpp"
#include "aledg/euler.hpp"

#include <cmath>
#include <random>

using namespace aledg;

TEST_CASE("prim_to_cons examples") {
  const EosParams eos(1.4);
  const auto u = prim_to_cons<1>(prim1(1.0, 0.0, 1.0), eos);
  CHECK(u(0) == doctest::Approx(1.0));
  CHECK(u(1) == doctest::Approx(0.0));
  CHECK(u(2) == doctest::Approx(2.5));

  ConservedState<2> u2;
  u2 << 1.0, 1.0, 0.0, 3.0;
  CHECK(cons_to_prim<2>(u2, eos).p == doctest::Approx(1.0).epsilon(1e-15));

  ConservedState<1> bad;
  bad << 1.0, 0.0, -1.0;
  CHECK_THROWS_AS(cons_to_prim<1>(bad, eos), NegativePressureError);
  CHECK_THROWS_AS(prim1(-1.0, 0.0, 1.0), InvalidStateError);
  CHECK_THROWS_AS(prim1(1.0, 0.0, 0.0), InvalidStateError);
  CHECK_THROWS_AS(EosParams(1.0), ConfigError);
}

TEST_CASE("prim/cons round trip on random states") {
  const EosParams eos(1.4);
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> pos(0.01, 10.0);
  std::uniform_real_distribution<double> vel(-20.0, 20.0);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const auto w = prim2(pos(gen), vel(gen), vel(gen), pos(gen));
    const auto u = prim_to_cons<2>(w, eos);
    const auto back = cons_to_prim<2>(u, eos);
    worst = std::max(worst, std::abs(back.rho - w.rho) / w.rho);
    // Pressure is a difference of energies; measure it on the energy scale.
    worst = std::max(worst, std::abs(back.p - w.p) / ((eos.gamma - 1.0) * u(3)));
    worst = std::max(worst, (back.vel - w.vel).norm() / (1.0 + w.vel.norm()));
  }
  CHECK(worst < 1e-14);
}

TEST_CASE("physical flux and sound speed") {
  const EosParams eos(1.4);
  const auto u = prim_to_cons<2>(prim2(1.0, 1.0, 0.0, 1.0), eos);
  const auto f = physical_flux<2>(u, Vec<2>(1.0, 0.0), eos);
  CHECK(f(0) == doctest::Approx(1.0));
  CHECK(f(1) == doctest::Approx(2.0));
  CHECK(f(2) == doctest::Approx(0.0));
  CHECK(f(3) == doctest::Approx(4.0));

  const auto rest = prim_to_cons<2>(prim2(1.0, 0.0, 0.0, 1.0), eos);
  const auto f0 = physical_flux<2>(rest, Vec<2>(1.0, 0.0), eos);
  CHECK(f0(1) == doctest::Approx(1.0));
  CHECK(f0(0) == 0.0);

  CHECK(sound_speed(prim1(1.0, 0.0, 1.0), eos) == doctest::Approx(1.1832159566).epsilon(1e-10));
  CHECK(sound_speed(prim1(1.0, 0.0, 0.5), eos) == doctest::Approx(0.8366600265).epsilon(1e-10));
  CHECK(sound_speed(prim1(4.0, 0.0, 4.0), eos) == doctest::Approx(sound_speed(prim1(1.0, 0.0, 1.0), eos)));
}

TEST_CASE("flux in direction n equals the rotated one-dimensional flux") {
  const EosParams eos(1.4);
  const auto w = prim2(1.3, 0.7, -0.4, 2.1);
  const auto u = prim_to_cons<2>(w, eos);
  const double a = 0.8;
  const Vec<2> n(std::cos(a), std::sin(a));
  const Vec<2> t(-n(1), n(0));
  const double vn = w.vel.dot(n);
  const double vt = w.vel.dot(t);
  const auto f = physical_flux<2>(u, n, eos);
  const auto u1 = prim_to_cons<1>(prim1(w.rho, vn, w.p), eos);
  const auto f1 = physical_flux<1>(u1, Vec<1>(1.0), eos);
  CHECK(f(0) == doctest::Approx(f1(0)));
  CHECK(f.segment<2>(1).dot(n) == doctest::Approx(f1(1)));
  CHECK(f.segment<2>(1).dot(t) == doctest::Approx(f1(0) * vt));
  CHECK(f(3) == doctest::Approx(f1(2) + 0.5 * w.rho * vt * vt * vn));
}

namespace {

template <int Dim>
Eigen::Matrix<double, Dim + 2, Dim + 2> fd_jacobian(const ConservedState<Dim>& u, const Vec<Dim>& n,
                                                    const EosParams& eos) {
  Eigen::Matrix<double, Dim + 2, Dim + 2> j;
  for (int c = 0; c < Dim + 2; ++c) {
    const double h = 1e-6 * std::max(1.0, std::abs(u(c)));
    ConservedState<Dim> up = u, um = u;
    up(c) += h;
    um(c) -= h;
    j.col(c) = (physical_flux<Dim>(up, n, eos) - physical_flux<Dim>(um, n, eos)) / (2.0 * h);
  }
  return j;
}

}  // namespace

TEST_CASE("eigen decomposition diagonalises the flux jacobian") {
  const EosParams eos(1.4);
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> pos(0.2, 3.0);
  std::uniform_real_distribution<double> vel(-2.0, 2.0);
  std::uniform_real_distribution<double> ang(0.0, 6.28);
  for (int i = 0; i < 200; ++i) {
    const auto u = prim_to_cons<2>(prim2(pos(gen), vel(gen), vel(gen), pos(gen)), eos);
    const double a = ang(gen);
    const Vec<2> n(std::cos(a), std::sin(a));
    const auto es = eigen_decomposition<2>(u, n, eos);
    const Eigen::Matrix4d I = es.R * es.R_inv;
    CHECK((I - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::Matrix4d J = flux_jacobian<2>(u, n, eos);
    CHECK((J - fd_jacobian<2>(u, n, eos)).cwiseAbs().maxCoeff() < 1e-6);
    const Eigen::Matrix4d D = es.R_inv * J * es.R;
    Eigen::Matrix4d off = D;
    off.diagonal().setZero();
    CHECK(off.cwiseAbs().maxCoeff() < 1e-10);
    for (int k = 0; k < 4; ++k) CHECK(D(k, k) == doctest::Approx(es.lambda(k)).epsilon(1e-10));
  }
}

TEST_CASE("one-dimensional eigenvalues match a finite-difference oracle") {
  const EosParams eos(1.4);
  const auto u = prim_to_cons<1>(prim1(0.8, 0.3, 1.7), eos);
  const auto es = eigen_decomposition<1>(u, Vec<1>(1.0), eos);
  Eigen::EigenSolver<Eigen::Matrix3d> solver(fd_jacobian<1>(u, Vec<1>(1.0), eos));
  std::vector<double> ev;
  for (int i = 0; i < 3; ++i) ev.push_back(solver.eigenvalues()(i).real());
  std::sort(ev.begin(), ev.end());
  const double c = sound_speed(prim1(0.8, 0.3, 1.7), eos);
  CHECK(ev[0] == doctest::Approx(0.3 - c).epsilon(1e-7));
  CHECK(ev[1] == doctest::Approx(0.3).epsilon(1e-7));
  CHECK(ev[2] == doctest::Approx(0.3 + c).epsilon(1e-7));
  CHECK(es.lambda(0) == doctest::Approx(0.3 - c));
  CHECK(es.lambda(2) == doctest::Approx(0.3 + c));

  // Eigenvectors of J and 2J span the same spaces.
  const Eigen::Matrix3d J = flux_jacobian<1>(u, Vec<1>(1.0), eos);
  const Eigen::Matrix3d D2 = es.R_inv * (2.0 * J) * es.R;
  CHECK(std::abs(D2(0, 1)) + std::abs(D2(1, 2)) + std::abs(D2(0, 2)) < 1e-10);
}

namespace {

double bisect_pstar(const PrimitiveState<1>& l, const PrimitiveState<1>& r, double gamma) {
  auto f = [&](double p, const PrimitiveState<1>& s) {
    const double c = std::sqrt(gamma * s.p / s.rho);
    if (p > s.p) {
      const double A = 2.0 / ((gamma + 1.0) * s.rho);
      const double B = (gamma - 1.0) / (gamma + 1.0) * s.p;
      return (p - s.p) * std::sqrt(A / (p + B));
    }
    return 2.0 * c / (gamma - 1.0) * (std::pow(p / s.p, (gamma - 1.0) / (2.0 * gamma)) - 1.0);
  };
  double lo = 1e-8, hi = 100.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double g = f(mid, l) + f(mid, r) + r.vel(0) - l.vel(0);
    (g > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("exact Riemann solver") {
  const EosParams eos(1.4);
  const auto l = prim1(1.0, 0.0, 1.0);
  const auto r = prim1(0.125, 0.0, 0.1);
  ExactRiemann rp(l, r, eos);
  CHECK(rp.p_star() == doctest::Approx(0.30313).epsilon(1e-4));
  CHECK(rp.p_star() == doctest::Approx(bisect_pstar(l, r, 1.4)).epsilon(1e-10));

  const auto far_left = rp.sample(-100.0);
  const auto far_right = rp.sample(100.0);
  CHECK(far_left.rho == l.rho);
  CHECK(far_left.p == l.p);
  CHECK(far_right.rho == r.rho);
  CHECK(far_right.p == r.p);

  const auto same = exact_riemann(l, l, 0.3, eos);
  CHECK(same.rho == doctest::Approx(1.0));
  CHECK(same.p == doctest::Approx(1.0));

  ExactRiemann contact(prim1(2.0, 1.0, 1.0), prim1(1.0, 1.0, 1.0), eos);
  CHECK(contact.u_star() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(contact.p_star() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(contact.sample(0.99).rho == doctest::Approx(2.0));
  CHECK(contact.sample(1.01).rho == doctest::Approx(1.0));

  CHECK_THROWS_AS(ExactRiemann(prim1(1.0, -20.0, 1.0), prim1(1.0, 20.0, 1.0), eos), VacuumError);
}

TEST_CASE("Rankine-Hugoniot across the returned shock") {
  const EosParams eos(1.4);
  const auto l = prim1(1.0, 0.0, 1.0);
  const auto r = prim1(0.125, 0.0, 0.1);
  ExactRiemann rp(l, r, eos);
  REQUIRE(rp.right_is_shock());
  const double s = rp.right_shock_speed();
  const auto ahead = prim_to_cons<1>(r, eos);
  const auto behind = prim_to_cons<1>(prim1(rp.rho_star_right(), rp.u_star(), rp.p_star()), eos);
  const auto jump_u = (behind - ahead).eval();
  const auto jump_f = (physical_flux<1>(behind, Vec<1>(1.0), eos) - physical_flux<1>(ahead, Vec<1>(1.0), eos)).eval();
  CHECK((s * jump_u - jump_f).cwiseAbs().maxCoeff() < 1e-10);

  ExactRiemann lax(prim1(0.445, 0.698, 3.528), prim1(0.5, 0.0, 0.571), eos);
  REQUIRE(lax.right_is_shock());
  const auto a2 = prim_to_cons<1>(prim1(0.5, 0.0, 0.571), eos);
  const auto b2 = prim_to_cons<1>(prim1(lax.rho_star_right(), lax.u_star(), lax.p_star()), eos);
  const auto r2 = (lax.right_shock_speed() * (b2 - a2) -
                   (physical_flux<1>(b2, Vec<1>(1.0), eos) - physical_flux<1>(a2, Vec<1>(1.0), eos)))
                      .eval();
  CHECK(r2.cwiseAbs().maxCoeff() < 1e-10);
}
