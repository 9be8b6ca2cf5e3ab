#pragma once

#include "aledg/mesh2d.hpp"
#include "aledg/physics.hpp"
#include "aledg/scheme.hpp"
#include "aledg/solver1d.hpp"
#include "aledg/solver2d.hpp"

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace aledg {

/// Shortest decimal form that round-trips (17 significant digits).
std::string format_number(double v);

/// `solution_{step:06}.csv` with cell averages and `modes_{step:06}.csv` with
/// raw coefficients.
void write_snapshot(const Solver1D<EulerPhysics<1>>& solver, int step, const std::string& dir);
/// As the 1D overload plus `mesh_{step:06}.vtk`.
void write_snapshot(const Solver2D<EulerPhysics<2>>& solver, int step, const std::string& dir);

/// Legacy ASCII VTK unstructured grid with per-cell scalars.
void write_vtk(const SimplicialMesh& mesh, const std::vector<std::pair<std::string, std::vector<double>>>& cell_data,
               const std::string& path);

/// Appends StepReport rows to `report.csv`.
class ReportWriter {
 public:
  ReportWriter(const std::string& dir, std::uint64_t seed, int nvar);
  void append(const StepReport& r);

 private:
  std::string path_;
  std::ofstream out_;
  std::uint64_t seed_;
};

}  // namespace aledg
