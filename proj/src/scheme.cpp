#include "aledg/scheme.hpp"

#include "aledg/errors.hpp"

namespace aledg {

MeshMode parse_mesh_mode(const std::string& name) {
  if (name == "static") return MeshMode::static_mesh;
  if (name == "moving") return MeshMode::moving;
  throw ConfigError("mesh", "unknown mesh mode '" + name + "'");
}

VelocityKind parse_velocity_kind(const std::string& name) {
  if (name == "average") return VelocityKind::average;
  if (name == "linearized_riemann" || name == "riemann") return VelocityKind::linearized_riemann;
  throw ConfigError("velocity", "unknown vertex velocity '" + name + "'");
}

SmoothingKind parse_smoothing_kind(const std::string& name) {
  if (name == "none") return SmoothingKind::none;
  if (name == "laplacian") return SmoothingKind::laplacian;
  if (name == "variable_diffusivity") return SmoothingKind::variable_diffusivity;
  throw ConfigError("smoothing.kind", "unknown smoothing '" + name + "'");
}

Norm parse_norm(const std::string& name) {
  if (name == "L1" || name == "l1") return Norm::L1;
  if (name == "L2" || name == "l2") return Norm::L2;
  if (name == "Linf" || name == "linf") return Norm::Linf;
  throw ConfigError("norm", "unknown norm '" + name + "'");
}

std::string to_string(MeshMode mode) { return mode == MeshMode::moving ? "moving" : "static"; }

std::string to_string(VelocityKind kind) {
  return kind == VelocityKind::average ? "average" : "linearized_riemann";
}

std::string to_string(SmoothingKind kind) {
  switch (kind) {
    case SmoothingKind::none: return "none";
    case SmoothingKind::laplacian: return "laplacian";
    case SmoothingKind::variable_diffusivity: return "variable_diffusivity";
  }
  return "unknown";
}

void SmoothingConfig::validate() const {
  if (alpha < 0.0 || alpha > 1.0) throw ConfigError("smoothing.alpha", "must lie in [0, 1]");
  if (nsmooth < 0) throw ConfigError("smoothing.nsmooth", "must be non-negative");
  if (!(eps0 > 0.0 && eps0 <= 1.0)) throw ConfigError("smoothing.eps0", "must lie in (0, 1]");
  if (!(0.0 < delta_l && delta_l < delta_u && delta_u < 1.0))
    throw ConfigError("smoothing.delta_l", "need 0 < delta_l < delta_u < 1");
  if (iterations < 0) throw ConfigError("smoothing.iterations", "must be non-negative");
}

void AdaptConfig::validate() const {
  if (h_min < 0.0 || h_max < 0.0) throw ConfigError("adapt.h_min", "bounds must be non-negative");
  if (h_min > 0.0 && h_max > 0.0 && h_min >= h_max) throw ConfigError("adapt.h_min", "h_min must be below h_max");
  if (quality_threshold < 0.0) throw ConfigError("adapt.quality_threshold", "must be non-negative");
  if (hysteresis < 0.0) throw ConfigError("adapt.hysteresis", "must be non-negative");
}

void SchemeConfig::validate() const {
  if (degree < 1 || degree > 3) throw ConfigError("degree", "must be 1, 2 or 3");
  if (!(cfl > 0.0)) throw ConfigError("cfl", "must be positive");
  if (!(orientation_safety > 0.0 && orientation_safety < 1.0))
    throw ConfigError("orientation_safety", "must lie in (0, 1)");
  if (velocity_noise < 0.0) throw ConfigError("velocity_noise", "must be non-negative");
  if (limiter.M < 0.0) throw ConfigError("limiter.M", "must be non-negative");
  if (limiter.nu < 1.0) throw ConfigError("limiter.nu", "must be at least 1");
  smoothing.validate();
  adapt.validate();
}

}  // namespace aledg
