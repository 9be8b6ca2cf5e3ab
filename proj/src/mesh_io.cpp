#include "aledg/errors.hpp"
#include "aledg/mesh2d.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace aledg {

namespace {

// Next non-empty line with comments stripped; false at end of file.
bool next_line(std::istream& in, std::istringstream& line, int& number) {
  std::string text;
  while (std::getline(in, text)) {
    ++number;
    const auto hash = text.find('#');
    if (hash != std::string::npos) text.erase(hash);
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    line.clear();
    line.str(text);
    return true;
  }
  return false;
}

[[noreturn]] void fail(const std::string& path, int number, const std::string& what) {
  throw IoError(path + ":" + std::to_string(number) + ": " + what);
}

int section(std::istream& in, std::istringstream& line, int& number, const std::string& path,
            const std::string& name) {
  if (!next_line(in, line, number)) fail(path, number, "missing section '" + name + "'");
  std::string key;
  int count = -1;
  if (!(line >> key >> count) || key != name || count < 0) fail(path, number, "expected '" + name + " <count>'");
  return count;
}

}  // namespace

SimplicialMesh read_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open mesh file " + path);
  std::istringstream line;
  int number = 0;
  if (!next_line(in, line, number)) fail(path, number, "empty mesh file");
  std::string key;
  int dim = 0;
  if (!(line >> key >> dim) || key != "meshdim" || dim != 2) fail(path, number, "expected 'meshdim 2'");

  const int nv = section(in, line, number, path, "vertices");
  std::vector<Vec2> x(nv);
  std::vector<char> seen(nv, 0);
  for (int i = 0; i < nv; ++i) {
    int id = -1;
    double a = 0.0, b = 0.0;
    if (!next_line(in, line, number) || !(line >> id >> a >> b)) fail(path, number, "bad vertex line");
    if (id < 0 || id >= nv || seen[id]) fail(path, number, "vertex id out of range or repeated");
    seen[id] = 1;
    x[id] = Vec2(a, b);
  }

  const int nc = section(in, line, number, path, "cells");
  std::vector<std::array<int, 3>> cells(nc);
  std::vector<char> seen_cell(nc, 0);
  for (int i = 0; i < nc; ++i) {
    int id = -1;
    std::array<int, 3> v{};
    if (!next_line(in, line, number) || !(line >> id >> v[0] >> v[1] >> v[2])) fail(path, number, "bad cell line");
    if (id < 0 || id >= nc || seen_cell[id]) fail(path, number, "cell id out of range or repeated");
    for (int k : v)
      if (k < 0 || k >= nv) fail(path, number, "cell references unknown vertex");
    seen_cell[id] = 1;
    cells[id] = v;
  }

  std::vector<BoundarySegment> boundary;
  std::istringstream probe;
  if (next_line(in, probe, number)) {
    std::string name;
    int nb = -1;
    if (!(probe >> name >> nb) || name != "boundary" || nb < 0) fail(path, number, "expected 'boundary <count>'");
    for (int i = 0; i < nb; ++i) {
      BoundarySegment s;
      std::string tag;
      if (!next_line(in, line, number) || !(line >> s.v0 >> s.v1 >> tag)) fail(path, number, "bad boundary line");
      try {
        s.kind = parse_boundary_kind(tag);
      } catch (const ConfigError&) {
        fail(path, number, "unknown boundary tag '" + tag + "'");
      }
      if (!(line >> s.partner)) s.partner = -1;
      boundary.push_back(s);
    }
  }
  try {
    return SimplicialMesh(std::move(x), std::move(cells), boundary);
  } catch (const DegenerateCellError& e) {
    throw IoError(path + ": " + e.what());
  } catch (const LookupError& e) {
    throw IoError(path + ": " + e.what());
  }
}

void write_mesh(const SimplicialMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write mesh file " + path);
  out << std::setprecision(17);
  out << "meshdim 2\n";
  out << "vertices " << mesh.num_vertices() << "\n";
  for (int v = 0; v < mesh.num_vertices(); ++v) out << v << " " << mesh.x[v](0) << " " << mesh.x[v](1) << "\n";
  out << "cells " << mesh.num_cells() << "\n";
  for (int c = 0; c < mesh.num_cells(); ++c)
    out << c << " " << mesh.cells[c][0] << " " << mesh.cells[c][1] << " " << mesh.cells[c][2] << "\n";
  std::ostringstream lines;
  int count = 0;
  for (const Face& f : mesh.faces) {
    if (f.boundary()) {
      lines << f.v[0] << " " << f.v[1] << " " << to_string(f.kind) << "\n";
      ++count;
    } else if (f.periodic()) {
      const auto& c1 = mesh.cells[f.cell[1]];
      lines << f.v[0] << " " << f.v[1] << " periodic " << count + 1 << "\n";
      lines << c1[(f.local[1] + 1) % 3] << " " << c1[(f.local[1] + 2) % 3] << " periodic " << count << "\n";
      count += 2;
    }
  }
  out << "boundary " << count << "\n" << lines.str();
  if (!out) throw IoError("failed writing mesh file " + path);
}

}  // namespace aledg
