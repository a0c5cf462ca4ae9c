#include "apsc/vtk_io.hpp"

#include <ostream>
#include <stdexcept>

namespace apsc {

namespace {

void header(std::ostream& out, const std::string& title) {
  // single title line, at most 255 chars
  std::string t = title.substr(0, 255);
  for (char& c : t)
    if (c == '\n') c = ' ';
  out << "# vtk DataFile Version 3.0\n" << t << "\nASCII\n";
}

}  // namespace

void write_vtk_structured_points(std::ostream& out, int nx, int ny, double hx, double hy,
                                 const std::vector<double>& values, const std::string& name,
                                 const std::string& title) {
  if (values.size() != static_cast<std::size_t>(nx) * ny)
    throw std::invalid_argument("vtk: value count does not match grid");
  header(out, title);
  out.precision(17);
  out << "DATASET STRUCTURED_POINTS\nDIMENSIONS " << nx << ' ' << ny << " 1\n";
  out << "ORIGIN 0 0 0\nSPACING " << hx << ' ' << hy << " 1\n";
  out << "POINT_DATA " << values.size() << "\nSCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
  for (double v : values) out << v << '\n';
}

void write_vtk_unstructured(std::ostream& out, const VtkHexGrid& g, const std::string& title) {
  header(out, title);
  out.precision(17);
  out << "DATASET UNSTRUCTURED_GRID\nPOINTS " << g.points.size() << " double\n";
  for (const auto& p : g.points) out << p[0] << ' ' << p[1] << ' ' << p[2] << '\n';
  out << "CELLS " << g.cells.size() << ' ' << 9 * g.cells.size() << '\n';
  for (const auto& c : g.cells) {
    out << 8;
    for (int id : c) out << ' ' << id;
    out << '\n';
  }
  out << "CELL_TYPES " << g.cells.size() << '\n';
  for (std::size_t i = 0; i < g.cells.size(); ++i) out << "12\n";
  out << "POINT_DATA " << g.points.size() << '\n';
  for (const auto& [name, v] : g.scalars) {
    if (v.size() != g.points.size()) throw std::invalid_argument("vtk: scalar size mismatch");
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (double x : v) out << x << '\n';
  }
  for (const auto& [name, v] : g.vectors) {
    if (v.size() != g.points.size()) throw std::invalid_argument("vtk: vector size mismatch");
    out << "VECTORS " << name << " double\n";
    for (const auto& x : v) out << x[0] << ' ' << x[1] << ' ' << x[2] << '\n';
  }
}

}  // namespace apsc
