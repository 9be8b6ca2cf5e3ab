#include "aledg/flux.hpp"

#include <algorithm>
#include <cmath>

namespace aledg {

FluxKind parse_flux_kind(const std::string& name) {
  if (name == "rusanov") return FluxKind::rusanov;
  if (name == "hllc") return FluxKind::hllc;
  if (name == "roe") return FluxKind::roe;
  throw ConfigError("flux.kind", "unknown flux '" + name + "'");
}

std::string to_string(FluxKind kind) {
  switch (kind) {
    case FluxKind::rusanov: return "rusanov";
    case FluxKind::hllc: return "hllc";
    case FluxKind::roe: return "roe";
  }
  return "unknown";
}

double fixed_eigenvalue(double lambda, double c, double alpha) {
  const double a = std::abs(lambda);
  const double delta = alpha * c;
  if (a > delta || delta <= 0.0) return a;
  return 0.5 * (delta + a * a / delta);
}

namespace {

template <int Dim>
struct RoeAverage {
  double rho, h, c;
  Vec<Dim> v;
};

template <int Dim>
RoeAverage<Dim> roe_average(const PrimitiveState<Dim>& l, const PrimitiveState<Dim>& r, double hl, double hr,
                            double gamma) {
  const double sl = std::sqrt(l.rho);
  const double sr = std::sqrt(r.rho);
  RoeAverage<Dim> a;
  a.rho = sl * sr;
  a.v = (sl * l.vel + sr * r.vel) / (sl + sr);
  a.h = (sl * hl + sr * hr) / (sl + sr);
  a.c = std::sqrt(std::max((gamma - 1.0) * (a.h - 0.5 * a.v.squaredNorm()), 1e-300));
  return a;
}

template <int Dim>
ConservedState<Dim> rusanov(const ConservedState<Dim>& ul, const ConservedState<Dim>& ur,
                            const PrimitiveState<Dim>& wl, const PrimitiveState<Dim>& wr, const Vec<Dim>& w,
                            const Vec<Dim>& n, const EosParams& eos) {
  const double wn = w.dot(n);
  const double s = std::max(std::abs(wl.vel.dot(n) - wn) + sound_speed(wl, eos),
                            std::abs(wr.vel.dot(n) - wn) + sound_speed(wr, eos));
  return 0.5 * (ale_flux<Dim>(ul, w, n, eos) + ale_flux<Dim>(ur, w, n, eos)) - 0.5 * s * (ur - ul);
}

template <int Dim>
ConservedState<Dim> hllc_star(const ConservedState<Dim>& u, const PrimitiveState<Dim>& p, const Vec<Dim>& n,
                              double s, double sm) {
  const double vn = p.vel.dot(n);
  const double f = p.rho * (s - vn) / (s - sm);
  ConservedState<Dim> star;
  star(0) = f;
  star.template segment<Dim>(1) = f * (p.vel + (sm - vn) * n);
  star(Dim + 1) = f * (u(Dim + 1) / p.rho + (sm - vn) * (sm + p.p / (p.rho * (s - vn))));
  return star;
}

template <int Dim>
ConservedState<Dim> hllc(const ConservedState<Dim>& ul, const ConservedState<Dim>& ur,
                         const PrimitiveState<Dim>& wl, const PrimitiveState<Dim>& wr, const Vec<Dim>& w,
                         const Vec<Dim>& n, const EosParams& eos) {
  const double wn = w.dot(n);
  const double cl = sound_speed(wl, eos);
  const double cr = sound_speed(wr, eos);
  const double vl = wl.vel.dot(n);
  const double vr = wr.vel.dot(n);
  const double hl = (ul(Dim + 1) + wl.p) / wl.rho;
  const double hr = (ur(Dim + 1) + wr.p) / wr.rho;
  const auto avg = roe_average<Dim>(wl, wr, hl, hr, eos.gamma);
  const double vt = avg.v.dot(n);
  const double sl = std::min(vl - cl, vt - avg.c);
  const double sr = std::max(vr + cr, vt + avg.c);
  const double sm = (wr.p - wl.p + wl.rho * vl * (sl - vl) - wr.rho * vr * (sr - vr)) /
                    (wl.rho * (sl - vl) - wr.rho * (sr - vr));

  // Sample the HLLC fan along the face trajectory x / t = w . n.
  if (wn <= sl) return ale_flux<Dim>(ul, w, n, eos);
  if (wn >= sr) return ale_flux<Dim>(ur, w, n, eos);
  if (wn <= sm) {
    const ConservedState<Dim> star = hllc_star<Dim>(ul, wl, n, sl, sm);
    return physical_flux<Dim>(ul, n, eos) + sl * (star - ul) - wn * star;
  }
  const ConservedState<Dim> star = hllc_star<Dim>(ur, wr, n, sr, sm);
  return physical_flux<Dim>(ur, n, eos) + sr * (star - ur) - wn * star;
}

template <int Dim>
ConservedState<Dim> roe(const ConservedState<Dim>& ul, const ConservedState<Dim>& ur,
                        const PrimitiveState<Dim>& wl, const PrimitiveState<Dim>& wr, const Vec<Dim>& w,
                        const Vec<Dim>& n, double alpha, const EosParams& eos) {
  const double wn = w.dot(n);
  const double hl = (ul(Dim + 1) + wl.p) / wl.rho;
  const double hr = (ur(Dim + 1) + wr.p) / wr.rho;
  const auto a = roe_average<Dim>(wl, wr, hl, hr, eos.gamma);
  const double vn = a.v.dot(n);
  const double c = a.c;
  const double dp = wr.p - wl.p;
  const double drho = wr.rho - wl.rho;
  const double dvn = (wr.vel - wl.vel).dot(n);

  const double a1 = (dp - a.rho * c * dvn) / (2.0 * c * c);
  const double a2 = drho - dp / (c * c);
  const double a3 = (dp + a.rho * c * dvn) / (2.0 * c * c);

  ConservedState<Dim> r1, r2, r3;
  r1 << 1.0, a.v - c * n, a.h - c * vn;
  r2 << 1.0, a.v, 0.5 * a.v.squaredNorm();
  r3 << 1.0, a.v + c * n, a.h + c * vn;

  ConservedState<Dim> diss = std::abs(vn - c - wn) * a1 * r1 + fixed_eigenvalue(vn - wn, c, alpha) * a2 * r2 +
                             std::abs(vn + c - wn) * a3 * r3;
  if constexpr (Dim == 2) {
    const Vec<2> t(-n(1), n(0));
    const double as = a.rho * (wr.vel - wl.vel).dot(t);
    ConservedState<2> rs;
    rs << 0.0, t, a.v.dot(t);
    diss += fixed_eigenvalue(vn - wn, c, alpha) * as * rs;
  }
  return 0.5 * (ale_flux<Dim>(ul, w, n, eos) + ale_flux<Dim>(ur, w, n, eos)) - 0.5 * diss;
}

}  // namespace

template <int Dim>
ConservedState<Dim> numerical_flux(const ConservedState<Dim>& ul, const ConservedState<Dim>& ur,
                                   const Vec<Dim>& w, const Vec<Dim>& n, const FluxSpec& spec,
                                   const EosParams& eos) {
  const auto wl = cons_to_prim<Dim>(ul, eos);
  const auto wr = cons_to_prim<Dim>(ur, eos);
  switch (spec.kind) {
    case FluxKind::rusanov: return rusanov<Dim>(ul, ur, wl, wr, w, n, eos);
    case FluxKind::hllc: return hllc<Dim>(ul, ur, wl, wr, w, n, eos);
    case FluxKind::roe: return roe<Dim>(ul, ur, wl, wr, w, n, spec.roe_alpha, eos);
  }
  throw CapabilityError("numerical_flux: unknown flux kind");
}

template ConservedState<1> numerical_flux<1>(const ConservedState<1>&, const ConservedState<1>&, const Vec<1>&,
                                             const Vec<1>&, const FluxSpec&, const EosParams&);
template ConservedState<2> numerical_flux<2>(const ConservedState<2>&, const ConservedState<2>&, const Vec<2>&,
                                             const Vec<2>&, const FluxSpec&, const EosParams&);

}  // namespace aledg
