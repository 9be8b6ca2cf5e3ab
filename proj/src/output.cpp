#include "aledg/output.hpp"

#include "aledg/errors.hpp"

#include <cstdio>
#include <filesystem>

namespace aledg {

namespace {

std::string numbered(const std::string& dir, const std::string& stem, int step, const std::string& ext) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "_%06d.", step);
  return (std::filesystem::path(dir) / (stem + buf + ext)).string();
}

std::ofstream open(const std::string& path) {
  std::filesystem::create_directories(std::filesystem::path(path).parent_path());
  std::ofstream out(path);
  if (!out) throw IoError(path + ": cannot open for writing");
  return out;
}

void check(const std::ofstream& out, const std::string& path) {
  if (!out) throw IoError(path + ": write failed");
}

void write_modes(const ModalSolution& u, const std::string& path) {
  auto out = open(path);
  out << "cell_id,mode";
  for (int v = 0; v < u.front().cols(); ++v) out << ",u" << v;
  out << "\n";
  for (std::size_t c = 0; c < u.size(); ++c)
    for (int m = 0; m < u[c].rows(); ++m) {
      out << c << "," << m;
      for (int v = 0; v < u[c].cols(); ++v) out << "," << format_number(u[c](m, v));
      out << "\n";
    }
  check(out, path);
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_snapshot(const Solver1D<EulerPhysics<1>>& s, int step, const std::string& dir) {
  const std::string path = numbered(dir, "solution", step, "csv");
  auto out = open(path);
  out << "cell_id,x_left,x_right,x_bary,rho,vx,p\n";
  const auto& mesh = s.mesh();
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const auto u = s.cell_average(c);
    out << c << "," << format_number(mesh.x[c]) << "," << format_number(mesh.x[c + 1]) << ","
        << format_number(mesh.barycenter(c)) << "," << format_number(u(0)) << "," << format_number(u(1) / u(0)) << ","
        << format_number(s.physics().pressure_of(u)) << "\n";
  }
  check(out, path);
  write_modes(s.solution(), numbered(dir, "modes", step, "csv"));
}

void write_snapshot(const Solver2D<EulerPhysics<2>>& s, int step, const std::string& dir) {
  const std::string path = numbered(dir, "solution", step, "csv");
  auto out = open(path);
  out << "cell_id,x_left,x_right,x_bary,rho,vx,vy,p\n";
  const auto& mesh = s.mesh();
  std::vector<double> rho(mesh.num_cells()), p(mesh.num_cells()), q(mesh.num_cells());
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const auto u = s.cell_average(c);
    double lo = mesh.vertex(c, 0)(0), hi = lo;
    for (int j = 1; j < 3; ++j) {
      lo = std::min(lo, mesh.vertex(c, j)(0));
      hi = std::max(hi, mesh.vertex(c, j)(0));
    }
    rho[c] = u(0);
    p[c] = s.physics().pressure_of(u);
    q[c] = mesh.quality(c);
    out << c << "," << format_number(lo) << "," << format_number(hi) << "," << format_number(mesh.barycenter(c)(0))
        << "," << format_number(u(0)) << "," << format_number(u(1) / u(0)) << "," << format_number(u(2) / u(0)) << ","
        << format_number(p[c]) << "\n";
  }
  check(out, path);
  write_modes(s.solution(), numbered(dir, "modes", step, "csv"));
  write_vtk(mesh, {{"rho", rho}, {"p", p}, {"quality", q}}, numbered(dir, "mesh", step, "vtk"));
}

void write_vtk(const SimplicialMesh& mesh, const std::vector<std::pair<std::string, std::vector<double>>>& cell_data,
               const std::string& path) {
  auto out = open(path);
  const int nc = mesh.num_cells();
  out << "# vtk DataFile Version 3.0\naledg mesh\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.num_vertices() << " double\n";
  for (const Vec2& v : mesh.x) out << format_number(v(0)) << " " << format_number(v(1)) << " 0\n";
  out << "CELLS " << nc << " " << 4 * nc << "\n";
  for (const auto& cell : mesh.cells) out << "3 " << cell[0] << " " << cell[1] << " " << cell[2] << "\n";
  out << "CELL_TYPES " << nc << "\n";
  for (int c = 0; c < nc; ++c) out << "5\n";
  out << "CELL_DATA " << nc << "\n";
  for (const auto& [name, values] : cell_data) {
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (double v : values) out << format_number(v) << "\n";
  }
  check(out, path);
}

ReportWriter::ReportWriter(const std::string& dir, std::uint64_t seed, int nvar)
    : path_((std::filesystem::path(dir) / "report.csv").string()), out_(open(path_)), seed_(seed) {
  out_ << "step,time,dt,limited_cells,positivity_cells,predictor_fallbacks,swaps,splits,merges,cells,min_quality,"
          "max_quality,orientation_bound,smoothing,seed";
  for (int v = 0; v < nvar; ++v) out_ << ",total_" << v;
  out_ << "\n";
  check(out_, path_);
}

void ReportWriter::append(const StepReport& r) {
  out_ << r.step << "," << format_number(r.time) << "," << format_number(r.dt) << "," << r.limited_cells << ","
       << r.positivity_cells << "," << r.predictor_fallbacks << "," << r.swaps << "," << r.splits << "," << r.merges
       << "," << r.cells << "," << format_number(r.min_quality) << "," << format_number(r.max_quality) << ","
       << format_number(r.orientation_bound) << "," << r.smoothing << "," << seed_;
  for (double t : r.totals) out_ << "," << format_number(t);
  out_ << "\n";
  check(out_, path_);
}

}  // namespace aledg
