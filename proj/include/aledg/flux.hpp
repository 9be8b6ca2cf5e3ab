#pragma once

#include "aledg/euler.hpp"

#include <string>

namespace aledg {

enum class FluxKind { rusanov, hllc, roe };

struct FluxSpec {
  FluxKind kind = FluxKind::rusanov;
  /// Eigenvalue-fix parameter for the contact (and shear) waves of the Roe flux.
  double roe_alpha = 0.1;
};

FluxKind parse_flux_kind(const std::string& name);
std::string to_string(FluxKind kind);

/// (F(u) - u w^T) n.
template <int Dim>
ConservedState<Dim> ale_flux(const ConservedState<Dim>& u, const Vec<Dim>& w, const Vec<Dim>& n,
                             const EosParams& eos) {
  return physical_flux<Dim>(u, n, eos) - w.dot(n) * u;
}

/// Magnitude of a linearly degenerate eigenvalue after the fix
/// |l| -> (delta + l^2 / delta) / 2 for |l| <= delta = alpha c.
double fixed_eigenvalue(double lambda, double c, double alpha);

/// Numerical flux across a face with unit normal n moving with velocity w.
/// Every wave-speed estimate is measured relative to w . n.
template <int Dim>
ConservedState<Dim> numerical_flux(const ConservedState<Dim>& ul, const ConservedState<Dim>& ur,
                                   const Vec<Dim>& w, const Vec<Dim>& n, const FluxSpec& spec,
                                   const EosParams& eos);

}  // namespace aledg
