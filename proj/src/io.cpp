#include "rsw/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "rsw/diagnostics.hpp"
#include "rsw/errors.hpp"

namespace rsw {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

} // namespace

void write_snapshot_csv(const std::filesystem::path& path, const State& s, const Problem& p) {
  const Grid& g = p.grid;
  const CellField phi = potential(s, p.bath, p.params.g);
  const CellField pv = potential_vorticity(s, p.params.omega, p.frozen_u(), p.frozen_v());
  std::ofstream out = open_out(path);
  out << "x,y,h,u,v,b,phi,pv\n";
  char buf[512];
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", g.xc(i), g.yc(j),
                    s.h(i, j), s.u(i, j), s.v(i, j), p.bath.b(i, j), phi(i, j), pv(i, j));
      out << buf;
    }
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

std::pair<State, Bathymetry> read_snapshot_csv(const std::filesystem::path& path, const Grid& grid) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::string line;
  std::getline(in, line);
  if (line != "x,y,h,u,v,b,phi,pv") throw ConfigError("unexpected snapshot header in '" + path.string() + "'");
  State s(grid);
  Bathymetry bath{CellField(grid)};
  std::size_t k = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (k >= grid.cells()) throw GridMismatch("snapshot has more rows than the grid has cells");
    double vals[8];
    std::istringstream row(line);
    std::string cell;
    for (int c = 0; c < 8; ++c) {
      if (!std::getline(row, cell, ',')) throw ConfigError("short snapshot row " + std::to_string(k + 2));
      vals[c] = std::stod(cell);
    }
    const int i = static_cast<int>(k % static_cast<std::size_t>(grid.nx()));
    const int j = static_cast<int>(k / static_cast<std::size_t>(grid.nx()));
    if (std::abs(vals[0] - grid.xc(i)) > 1e-9 * grid.dx() || std::abs(vals[1] - grid.yc(j)) > 1e-9 * grid.dy())
      throw GridMismatch("snapshot row " + std::to_string(k + 2) + " is not at the expected cell centre");
    s.h[k] = vals[2];
    s.u[k] = vals[3];
    s.v[k] = vals[4];
    bath.b[k] = vals[5];
    ++k;
  }
  if (k != grid.cells()) throw GridMismatch("snapshot has fewer rows than the grid has cells");
  return {std::move(s), std::move(bath)};
}

void write_snapshot_vtk(const std::filesystem::path& path, const State& s, const Problem& p) {
  const Grid& g = p.grid;
  const CellField phi = potential(s, p.bath, p.params.g);
  const CellField pv = potential_vorticity(s, p.params.omega, p.frozen_u(), p.frozen_v());
  std::ofstream out = open_out(path);
  char buf[128];
  out << "# vtk DataFile Version 3.0\n";
  std::snprintf(buf, sizeof buf, "rsw snapshot t=%.17g\n", s.t);
  out << buf << "ASCII\nDATASET STRUCTURED_POINTS\n";
  out << "DIMENSIONS " << g.nx() << ' ' << g.ny() << " 1\n";
  std::snprintf(buf, sizeof buf, "ORIGIN %.17g %.17g 0\n", g.xc(0), g.yc(0));
  out << buf;
  std::snprintf(buf, sizeof buf, "SPACING %.17g %.17g 1\n", g.dx(), g.dy());
  out << buf;
  out << "POINT_DATA " << g.cells() << '\n';
  auto field = [&](const char* name, const CellField& f) {
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (std::size_t k = 0; k < f.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g\n", f[k]);
      out << buf;
    }
  };
  field("h", s.h);
  field("u", s.u);
  field("v", s.v);
  field("b", p.bath.b);
  field("phi", phi);
  field("pv", pv);
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

} // namespace rsw
