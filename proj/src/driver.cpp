#include "aledg/driver.hpp"

#include "aledg/errors.hpp"
#include "aledg/output.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace aledg {

namespace {

double domain_measure(const CaseSpec& c) {
  const double lx = c.domain[1] - c.domain[0];
  return c.dim == 1 ? lx : lx * (c.domain[3] - c.domain[2]);
}

void write_summary(const RunResult& r, const std::string& dir) {
  const std::string path = (std::filesystem::path(dir) / "summary.csv").string();
  std::ofstream out(path);
  if (!out) throw IoError(path + ": cannot open for writing");
  out << "key,value\ncase," << r.case_name << "\nsteps," << r.steps << "\ntime," << format_number(r.time)
      << "\ncells," << r.cells << "\n";
  if (r.has_reference)
    out << "l1_rho," << format_number(r.l1) << "\nl2_rho," << format_number(r.l2) << "\nlinf_rho,"
        << format_number(r.linf) << "\nrms_rho," << format_number(r.rms) << "\n";
}

void prepare_dir(const std::string& dir, const RunConfig& cfg) {
  std::filesystem::create_directories(dir);
  const std::string path = (std::filesystem::path(dir) / "config.ini").string();
  std::ofstream out(path);
  if (!out) throw IoError(path + ": cannot open for writing");
  out << format_config(cfg);
}

RunResult run_1d(const RunConfig& cfg, const CaseSpec& spec, bool write_output) {
  if (!cfg.mesh_file.empty()) throw ConfigError("case.mesh", "mesh files describe 2D triangulations");
  EulerPhysics<1> phys{EosParams(spec.gamma), cfg.flux};
  const int n = cfg.n > 0 ? cfg.n : spec.nx;
  Solver1D<EulerPhysics<1>> s(phys, Mesh1D::uniform(spec.domain[0], spec.domain[1], n, spec.boundary[0], spec.boundary[1]),
                              cfg.scheme);
  s.set_initial([&](double x) { return to_conserved<1>(spec.initial(Eigen::Vector2d(x, 0.0)), phys.eos); });

  RunResult r;
  r.case_name = spec.name;
  const double T = cfg.final_time >= 0.0 ? cfg.final_time : spec.final_time;
  std::optional<ReportWriter> report;
  if (write_output) {
    r.output_dir = output_directory(cfg);
    prepare_dir(r.output_dir, cfg);
    report.emplace(r.output_dir, cfg.scheme.seed, 3);
    write_snapshot(s, 0, r.output_dir);
  }
  int last = 0;
  s.advance(
      T,
      [&](const StepReport& rep) {
        if (!report) return;
        report->append(rep);
        if (cfg.snapshot_interval > 0 && rep.step % cfg.snapshot_interval == 0) {
          write_snapshot(s, rep.step, r.output_dir);
          last = rep.step;
        }
      },
      cfg.max_steps);
  r.steps = s.steps();
  r.time = s.time();
  r.cells = s.mesh().num_cells();
  if (write_output && last != r.steps) write_snapshot(s, r.steps, r.output_dir);
  if (spec.reference != ReferenceKind::none) {
    r.has_reference = true;
    const double t = s.time();
    auto ref = [&](double x) { return to_conserved<1>(reference_solution(spec, Eigen::Vector2d(x, 0.0), t), phys.eos); };
    r.l1 = s.error_norm(ref, 0, Norm::L1);
    r.l2 = s.error_norm(ref, 0, Norm::L2);
    r.linf = s.error_norm(ref, 0, Norm::Linf);
    r.rms = r.l2 / std::sqrt(domain_measure(spec));
  }
  if (write_output) write_summary(r, r.output_dir);
  return r;
}

}  // namespace

void deposit_point_energy(Solver2D<EulerPhysics<2>>& s, double energy) {
  const auto& mesh = s.mesh();
  int centre = 0;
  for (int v = 1; v < mesh.num_vertices(); ++v)
    if (mesh.x[v].norm() < mesh.x[centre].norm()) centre = v;
  std::vector<int> star;
  double area = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c)
    for (int v : mesh.cells[c])
      if (mesh.master[v] == mesh.master[centre]) {
        star.push_back(c);
        area += mesh.area(c);
      }
  const double phi0 = constant_mode_value(2);
  for (int c : star) s.solution()[c](0, 3) += energy / area / phi0;
}

namespace {

RunResult run_2d(const RunConfig& cfg, const CaseSpec& spec, bool write_output) {
  EulerPhysics<2> phys{EosParams(spec.gamma), cfg.flux};
  SimplicialMesh mesh = [&] {
    if (!cfg.mesh_file.empty()) return read_mesh(cfg.mesh_file);
    const int nx = cfg.n > 0 ? cfg.n : spec.nx;
    const int ny = cfg.ny > 0 ? cfg.ny
                              : (cfg.n > 0 ? std::max(1, static_cast<int>(std::lround(double(cfg.n) * spec.ny / spec.nx)))
                                           : spec.ny);
    return SimplicialMesh::structured(nx, ny, spec.domain[0], spec.domain[1], spec.domain[2], spec.domain[3],
                                      spec.boundary[0], spec.boundary[1], spec.boundary[2], spec.boundary[3],
                                      spec.cross_split ? BlockSplit::cross : BlockSplit::diagonal);
  }();
  Solver2D<EulerPhysics<2>> s(phys, std::move(mesh), cfg.scheme);
  s.set_initial([&](const Vec2& x) { return to_conserved<2>(spec.initial(x), phys.eos); });
  if (spec.point_energy > 0.0) deposit_point_energy(s, spec.point_energy);

  RunResult r;
  r.case_name = spec.name;
  const double T = cfg.final_time >= 0.0 ? cfg.final_time : spec.final_time;
  std::optional<ReportWriter> report;
  if (write_output) {
    r.output_dir = output_directory(cfg);
    prepare_dir(r.output_dir, cfg);
    report.emplace(r.output_dir, cfg.scheme.seed, 4);
    write_snapshot(s, 0, r.output_dir);
  }
  int last = 0;
  s.advance(
      T,
      [&](const StepReport& rep) {
        if (!report) return;
        report->append(rep);
        if (cfg.snapshot_interval > 0 && rep.step % cfg.snapshot_interval == 0) {
          write_snapshot(s, rep.step, r.output_dir);
          last = rep.step;
        }
      },
      cfg.max_steps);
  r.steps = s.steps();
  r.time = s.time();
  r.cells = s.mesh().num_cells();
  if (write_output && last != r.steps) write_snapshot(s, r.steps, r.output_dir);
  if (spec.reference != ReferenceKind::none) {
    r.has_reference = true;
    const double t = s.time();
    auto ref = [&](const Vec2& x) { return to_conserved<2>(reference_solution(spec, x, t), phys.eos); };
    r.l1 = s.error_norm(ref, 0, Norm::L1);
    r.l2 = s.error_norm(ref, 0, Norm::L2);
    r.linf = s.error_norm(ref, 0, Norm::Linf);
    r.rms = r.l2 / std::sqrt(s.mesh().total_area());
  }
  if (write_output) write_summary(r, r.output_dir);
  return r;
}

}  // namespace

CaseSpec resolve_case(const RunConfig& cfg) { return boosted(get_case(cfg.case_name), cfg.boost); }

std::string output_directory(const RunConfig& cfg) {
  if (!cfg.output_dir.empty()) return cfg.output_dir;
  const char* root = std::getenv("ALEDG_OUTPUT_DIR");
  const std::filesystem::path base = root && *root ? std::filesystem::path(root) : std::filesystem::path("output");
  return (base / cfg.case_name).string();
}

RunResult run(const RunConfig& cfg, bool write_output) {
  cfg.validate();
  const CaseSpec spec = resolve_case(cfg);
  return spec.dim == 1 ? run_1d(cfg, spec, write_output) : run_2d(cfg, spec, write_output);
}

double convergence_rate(double coarse, double fine) { return std::log2(coarse / fine); }

std::vector<ConvergenceRow> convergence_study(const RunConfig& cfg, const std::vector<int>& resolutions) {
  if (resolutions.empty()) throw ConfigError("resolutions", "need at least one resolution");
  const CaseSpec spec = resolve_case(cfg);
  if (spec.reference == ReferenceKind::none)
    throw CapabilityError("case '" + spec.name + "' has no reference solution");
  std::vector<ConvergenceRow> rows;
  for (int n : resolutions) {
    if (n <= 0) throw ConfigError("resolutions", "resolutions must be positive");
    RunConfig c = cfg;
    c.n = n;
    const RunResult r = run(c, false);
    ConvergenceRow row{n, r.cells, r.steps, r.l2, r.rms, std::nullopt};
    if (!rows.empty()) row.rate = convergence_rate(rows.back().l2, r.l2) / std::log2(double(n) / rows.back().n);
    rows.push_back(row);
  }
  return rows;
}

std::string format_convergence(const std::vector<ConvergenceRow>& rows) {
  std::ostringstream o;
  o << "n,cells,steps,l2_error,rms_error,rate\n";
  for (const auto& r : rows)
    o << r.n << "," << r.cells << "," << r.steps << "," << format_number(r.l2) << "," << format_number(r.rms) << ","
      << (r.rate ? format_number(*r.rate) : "") << "\n";
  return o.str();
}

}  // namespace aledg
