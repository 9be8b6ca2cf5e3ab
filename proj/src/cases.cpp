#include "aledg/cases.hpp"

#include "aledg/errors.hpp"

#include <cmath>
#include <memory>
#include <numbers>

namespace aledg {

namespace {

using Point = Eigen::Vector2d;
constexpr double pi = std::numbers::pi;

Primitive riemann_sample(const ExactRiemann& rp, double x0, double x, double t) {
  if (t <= 0.0) {
    const auto& s = x < x0 ? rp.sample(-1e300) : rp.sample(1e300);
    return {s.rho, s.vel(0), 0.0, s.p};
  }
  const auto s = rp.sample((x - x0) / t);
  return {s.rho, s.vel(0), 0.0, s.p};
}

CaseSpec riemann_case(std::string name, double x0, double x1, double split, double T, Primitive left,
                      Primitive right, int n, double gamma = 1.4) {
  CaseSpec c;
  c.name = std::move(name);
  c.domain = {x0, x1, 0.0, 0.0};
  c.gamma = gamma;
  c.final_time = T;
  c.nx = n;
  c.initial = [=](const Point& x) { return x(0) < split ? left : right; };
  c.reference = ReferenceKind::exact_riemann;
  const EosParams eos(gamma);
  const auto rp = std::make_shared<ExactRiemann>(prim1(left.rho, left.vx, left.p),
                                                 prim1(right.rho, right.vx, right.p), eos);
  c.exact = [rp, split](const Point& x, double t) { return riemann_sample(*rp, split, x(0), t); };
  return c;
}

Primitive titarev(const Point& x) {
  if (x(0) <= -4.5) return {1.515695, 0.523346, 0.0, 1.805};
  return {1.0 + 0.1 * std::sin(20.0 * pi * x(0)), 0.0, 0.0, 1.0};
}

double wrap(double x, double lo, double period) { return x - period * std::floor((x - lo) / period); }

// Cylindrical Sedov constant for gamma = 1.4: R = (E t^2 / (alpha rho))^(1/4).
constexpr double sedov_alpha = 0.984;

std::vector<CaseSpec> registry() {
  std::vector<CaseSpec> cases;

  {
    CaseSpec c;
    c.name = "smooth_advection";
    c.description = "density bump advected with unit velocity";
    c.domain = {-5.0, 5.0, 0.0, 0.0};
    c.final_time = 1.0;
    c.nx = 100;
    c.boundary[0] = c.boundary[1] = BoundaryKind::periodic;
    auto rho = [](double x) { return 1.0 + std::exp(-10.0 * x * x); };
    c.initial = [rho](const Point& x) { return Primitive{rho(x(0)), 1.0, 0.0, 1.0}; };
    c.reference = ReferenceKind::exact_function;
    c.exact = [rho](const Point& x, double t) { return Primitive{rho(wrap(x(0) - t, -5.0, 10.0)), 1.0, 0.0, 1.0}; };
    cases.push_back(c);
  }
  {
    CaseSpec c;
    c.name = "isentropic";
    c.description = "isentropic gamma = 3 flow with non-constant velocity";
    c.domain = {-1.0, 1.0, 0.0, 0.0};
    c.gamma = 3.0;
    c.final_time = 0.1;
    c.nx = 100;
    c.boundary[0] = c.boundary[1] = BoundaryKind::periodic;
    auto rho = [](double x) { return 1.0 + 0.9999995 * std::sin(pi * x); };
    c.initial = [rho](const Point& x) {
      const double r = rho(x(0));
      return Primitive{r, 0.0, 0.0, r * r * r};
    };
    c.reference = ReferenceKind::isentropic_characteristics;
    c.exact = [rho](const Point& x, double t) { return isentropic_solution(rho, 2.0, x(0), t); };
    cases.push_back(c);
  }
  {
    auto c = riemann_case("single_contact", 0.0, 1.0, 0.5, 0.5, {2.0, 1.0, 0.0, 1.0}, {1.0, 1.0, 0.0, 1.0}, 100);
    c.description = "isolated contact moving with unit speed";
    cases.push_back(c);
  }
  {
    auto c = riemann_case("sod", 0.0, 1.0, 0.5, 0.2, {1.0, 0.0, 0.0, 1.0}, {0.125, 0.0, 0.0, 0.1}, 100);
    c.description = "Sod shock tube";
    cases.push_back(c);
  }
  {
    auto c = riemann_case("lax", -10.0, 10.0, 0.0, 1.3, {0.445, 0.698, 0.0, 3.528}, {0.5, 0.0, 0.0, 0.571}, 100);
    c.description = "Lax shock tube";
    cases.push_back(c);
  }
  {
    CaseSpec c;
    c.name = "shu_osher";
    c.description = "shock interacting with a density wave";
    c.domain = {-5.0, 5.0, 0.0, 0.0};
    c.final_time = 1.8;
    c.nx = 200;
    c.initial = [](const Point& x) {
      if (x(0) < -4.0) return Primitive{3.857143, 2.629369, 0.0, 10.333333};
      return Primitive{1.0 + 0.2 * std::sin(5.0 * x(0)), 0.0, 0.0, 1.0};
    };
    cases.push_back(c);
  }
  {
    CaseSpec c;
    c.name = "titarev_toro";
    c.description = "shock interacting with a high frequency density wave";
    c.domain = {-5.0, 5.0, 0.0, 0.0};
    c.final_time = 5.0;
    c.nx = 1000;
    c.initial = titarev;
    cases.push_back(c);
  }
  {
    auto c = riemann_case("toro_123", 0.0, 1.0, 0.5, 0.15, {1.0, -2.0, 0.0, 0.4}, {1.0, 2.0, 0.0, 0.4}, 100);
    c.description = "two symmetric rarefactions (123 problem)";
    cases.push_back(c);
  }
  {
    CaseSpec c;
    c.name = "blast";
    c.description = "Woodward-Colella interacting blast waves";
    c.domain = {0.0, 1.0, 0.0, 0.0};
    c.final_time = 0.038;
    c.nx = 400;
    c.boundary[0] = c.boundary[1] = BoundaryKind::reflective;
    c.initial = [](const Point& x) {
      const double p = x(0) < 0.1 ? 1000.0 : (x(0) < 0.9 ? 0.01 : 100.0);
      return Primitive{1.0, 0.0, 0.0, p};
    };
    cases.push_back(c);
  }
  {
    auto c = riemann_case("leblanc", 0.0, 9.0, 3.0, 6.0, {1.0, 0.0, 0.0, 0.1}, {0.001, 0.0, 0.0, 1e-7}, 1400,
                          5.0 / 3.0);
    c.description = "Le Blanc shock tube";
    cases.push_back(c);
  }
  {
    CaseSpec c;
    c.name = "vortex";
    c.description = "isentropic vortex advected through a periodic box";
    c.dim = 2;
    c.domain = {-10.0, 10.0, -10.0, 10.0};
    c.final_time = 1.0;
    c.nx = c.ny = 50;
    c.boundary.fill(BoundaryKind::periodic);
    c.initial = [](const Point& x) { return vortex_solution(x, 0.0); };
    c.reference = ReferenceKind::exact_function;
    c.exact = [](const Point& x, double t) { return vortex_solution(x, t); };
    cases.push_back(c);
  }
  {
    CaseSpec c;
    c.name = "sod2d";
    c.description = "Sod shock tube on a triangulated channel";
    c.dim = 2;
    c.domain = {0.0, 1.0, 0.0, 0.1};
    c.final_time = 0.2;
    c.nx = 100;
    c.ny = 20;
    c.boundary = {BoundaryKind::open, BoundaryKind::open, BoundaryKind::periodic, BoundaryKind::periodic};
    c.cross_split = true;
    c.initial = [](const Point& x) {
      return x(0) < 0.5 ? Primitive{1.0, 0.0, 0.0, 1.0} : Primitive{0.125, 0.0, 0.0, 0.1};
    };
    c.reference = ReferenceKind::exact_riemann;
    const auto rp = std::make_shared<ExactRiemann>(prim1(1.0, 0.0, 1.0), prim1(0.125, 0.0, 0.1), EosParams(1.4));
    c.exact = [rp](const Point& x, double t) { return riemann_sample(*rp, 0.5, x(0), t); };
    cases.push_back(c);
  }
  {
    CaseSpec c;
    c.name = "sedov";
    c.description = "Sedov-Taylor point explosion";
    c.dim = 2;
    c.domain = {-1.0, 1.0, -1.0, 1.0};
    c.final_time = 1.0;
    c.nx = c.ny = 40;
    c.boundary.fill(BoundaryKind::reflective);
    c.cross_split = true;
    c.initial = [](const Point&) { return Primitive{1.0, 0.0, 0.0, 0.4 * 1e-12}; };
    c.point_energy = sedov_alpha * std::pow(0.8, 4);
    cases.push_back(c);
  }
  {
    CaseSpec c;
    c.name = "titarev_toro_2d";
    c.description = "Titarev-Toro problem on a triangulated channel";
    c.dim = 2;
    c.domain = {-5.0, 5.0, 0.0, 0.1};
    c.final_time = 5.0;
    c.nx = 500;
    c.ny = 5;
    c.boundary = {BoundaryKind::open, BoundaryKind::open, BoundaryKind::periodic, BoundaryKind::periodic};
    c.initial = titarev;
    cases.push_back(c);
  }
  return cases;
}

const std::vector<CaseSpec>& cases() {
  static const std::vector<CaseSpec> all = registry();
  return all;
}

}  // namespace

std::string to_string(ReferenceKind kind) {
  switch (kind) {
    case ReferenceKind::exact_function: return "exact_function";
    case ReferenceKind::exact_riemann: return "exact_riemann";
    case ReferenceKind::isentropic_characteristics: return "isentropic_characteristics";
    case ReferenceKind::none: return "none";
  }
  return "none";
}

std::vector<std::string> case_names() {
  std::vector<std::string> names;
  for (const auto& c : cases()) names.push_back(c.name);
  return names;
}

CaseSpec get_case(const std::string& name) {
  for (const auto& c : cases())
    if (c.name == name) return c;
  throw LookupError("unknown case '" + name + "'");
}

CaseSpec boosted(CaseSpec spec, double V) {
  if (V == 0.0) return spec;
  auto init = spec.initial;
  spec.initial = [init, V](const Point& x) {
    Primitive w = init(x);
    w.vx += V;
    return w;
  };
  if (spec.reference == ReferenceKind::exact_riemann) {
    // Galilean shift: the boosted solution at x is the original one at x - V t.
    auto exact = spec.exact;
    spec.exact = [exact, V](const Point& x, double t) {
      Primitive w = exact(Point(x(0) - V * t, x(1)), t);
      w.vx += V;
      return w;
    };
  } else {
    spec.reference = ReferenceKind::none;
    spec.exact = nullptr;
  }
  return spec;
}

Primitive reference_solution(const CaseSpec& spec, const Eigen::Vector2d& x, double t) {
  if (spec.reference == ReferenceKind::none || !spec.exact)
    throw CapabilityError("case '" + spec.name + "' has no reference solution");
  return spec.exact(x, t);
}

Primitive isentropic_solution(const std::function<double(double)>& rho0, double period, double x, double t) {
  const double s3 = std::sqrt(3.0);
  const double h = 1e-6 * period;
  // Riemann invariant q0(xi) = +/- sqrt(3) rho0(xi) carried along dx/dt = q.
  auto follow = [&](double sign) {
    auto q0 = [&](double xi) { return sign * s3 * rho0(xi); };
    double xi = x - t * q0(x);
    for (int it = 0; it < 100; ++it) {
      const double g = xi + t * q0(xi) - x;
      const double dg = 1.0 + t * (q0(xi + h) - q0(xi - h)) / (2.0 * h);
      const double step = g / dg;
      xi -= step;
      if (std::abs(step) < 1e-15 * period) break;
    }
    return q0(xi);
  };
  const double r = follow(1.0), s = follow(-1.0);
  const double rho = (r - s) / (2.0 * s3);
  return {rho, 0.5 * (r + s), 0.0, rho * rho * rho};
}

Primitive vortex_solution(const Eigen::Vector2d& x, double t, double beta, double gamma) {
  const double dx = wrap(x(0) - t, -10.0, 20.0);
  const double dy = wrap(x(1), -10.0, 20.0);
  const double r2 = dx * dx + dy * dy;
  const double T = 1.0 - (gamma - 1.0) * beta * beta / (8.0 * gamma * pi * pi) * std::exp(1.0 - r2);
  const double rho = std::pow(T, 1.0 / (gamma - 1.0));
  const double e = std::exp(0.5 * (1.0 - r2));
  return {rho, 1.0 - beta / (2.0 * pi) * dy * e, beta / (2.0 * pi) * dx * e, std::pow(rho, gamma)};
}

}  // namespace aledg
