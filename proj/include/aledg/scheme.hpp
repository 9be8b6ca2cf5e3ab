#pragma once

#include "aledg/limiter.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace aledg {

enum class MeshMode { static_mesh, moving };
enum class VelocityKind { average, linearized_riemann };
enum class SmoothingKind { none, laplacian, variable_diffusivity };
enum class Norm { L1, L2, Linf };

MeshMode parse_mesh_mode(const std::string& name);
VelocityKind parse_velocity_kind(const std::string& name);
SmoothingKind parse_smoothing_kind(const std::string& name);
Norm parse_norm(const std::string& name);
std::string to_string(MeshMode mode);
std::string to_string(VelocityKind kind);
std::string to_string(SmoothingKind kind);

struct SmoothingConfig {
  SmoothingKind kind = SmoothingKind::variable_diffusivity;
  double alpha = 0.5;
  int nsmooth = 4;
  double eps0 = 0.05;
  double delta_l = 0.2;
  double delta_u = 0.8;
  int iterations = 10;
  double fallback_quality = 0.4;

  void validate() const;
};

struct AdaptConfig {
  double h_min = 0.0;
  double h_max = 0.0;
  bool swap = true;
  double quality_threshold = 0.3;
  double hysteresis = 0.05;

  void validate() const;
};

struct SchemeConfig {
  int degree = 1;
  double cfl = 0.9;
  MeshMode mode = MeshMode::static_mesh;
  VelocityKind velocity = VelocityKind::average;
  LimiterConfig limiter;
  SmoothingConfig smoothing;
  AdaptConfig adapt;
  double orientation_safety = 0.1;
  /// Uniform noise on vertex velocities, relative to the local fluid speed.
  double velocity_noise = 0.0;
  std::uint64_t seed = 1;

  void validate() const;
};

struct StepReport {
  int step = 0;
  double time = 0.0;
  double dt = 0.0;
  int limited_cells = 0;
  int positivity_cells = 0;
  int predictor_fallbacks = 0;
  int swaps = 0;
  int splits = 0;
  int merges = 0;
  int cells = 0;
  double min_quality = 0.0;
  double max_quality = 0.0;
  double orientation_bound = std::numeric_limits<double>::infinity();
  std::string smoothing = "none";
  std::vector<double> totals;
};

}  // namespace aledg
