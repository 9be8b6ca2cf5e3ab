#pragma once

#include "aledg/cases.hpp"
#include "aledg/config.hpp"
#include "aledg/solver2d.hpp"

#include <optional>
#include <string>
#include <vector>

namespace aledg {

struct RunResult {
  std::string case_name;
  std::string output_dir;
  int steps = 0;
  double time = 0.0;
  int cells = 0;
  bool has_reference = false;
  /// Density errors against the reference at the final time.
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
  /// l2 / sqrt(domain measure).
  double rms = 0.0;
};

/// Case of a config with boost applied.
CaseSpec resolve_case(const RunConfig& cfg);

/// Output root: cfg.output_dir, else $ALEDG_OUTPUT_DIR/<case>, else output/<case>.
std::string output_directory(const RunConfig& cfg);

/// Adds `energy` spread evenly over the cells around the vertex nearest the
/// origin.
void deposit_point_energy(Solver2D<EulerPhysics<2>>& s, double energy);

/// Runs one case to its final time; writes snapshots and report.csv when
/// `write_output` is set.
RunResult run(const RunConfig& cfg, bool write_output = true);

struct ConvergenceRow {
  int n = 0;
  int cells = 0;
  int steps = 0;
  double l2 = 0.0;
  double rms = 0.0;
  std::optional<double> rate;
};

/// log2(coarse / fine) for consecutive doublings.
double convergence_rate(double coarse, double fine);

/// Runs every resolution and reports the L2 density error with rates between
/// consecutive rows.
std::vector<ConvergenceRow> convergence_study(const RunConfig& cfg, const std::vector<int>& resolutions);

std::string format_convergence(const std::vector<ConvergenceRow>& rows);

}  // namespace aledg
