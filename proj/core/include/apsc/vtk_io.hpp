#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace apsc {

/// ASCII legacy VTK STRUCTURED_POINTS with one scalar point field.
void write_vtk_structured_points(std::ostream& out, int nx, int ny, double hx, double hy,
                                 const std::vector<double>& values, const std::string& name,
                                 const std::string& title);

struct VtkHexGrid {
  std::vector<std::array<double, 3>> points;
  std::vector<std::array<int, 8>> cells;
  std::vector<std::pair<std::string, std::vector<double>>> scalars;
  std::vector<std::pair<std::string, std::vector<std::array<double, 3>>>> vectors;
};

/// ASCII legacy VTK UNSTRUCTURED_GRID of hexahedra (cell type 12).
void write_vtk_unstructured(std::ostream& out, const VtkHexGrid& grid, const std::string& title);

}  // namespace apsc
