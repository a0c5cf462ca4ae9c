#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "apsc/boundary.hpp"
#include "apsc/energy.hpp"

namespace apsc {

/// Top/bottom treatment. Periodic identifies x3 = 0 with x3 = 1, so an
/// x3-independent APS field is an exact discrete candidate; Free leaves the
/// end faces unconstrained.
enum class EndCondition { Periodic, Free };

/// Structured trilinear hexahedra on the unit cube with n nodes per edge.
struct HexMesh {
  int n = 9;
  double h = 0.125;
  EndCondition ends = EndCondition::Periodic;
  std::vector<std::array<int, 8>> elements;  // VTK hexahedron node order

  /// Distinct node layers along x3 (n - 1 when periodic).
  int layers() const { return ends == EndCondition::Periodic ? n - 1 : n; }
  int num_nodes() const { return n * n * layers(); }
  int node(int i, int j, int k) const { return i + n * (j + n * k); }
  std::array<double, 3> coord(int id) const;
  /// On one of the four faces x1 in {0,1} or x2 in {0,1}.
  bool lateral(int id) const;
};

HexMesh make_unit_cube(int n = 9, EndCondition ends = EndCondition::Periodic);

struct Displacement3D {
  std::vector<std::array<double, 3>> u;
  std::vector<std::uint8_t> dirichlet;
};

/// Lateral nodes carry (0, 0, scale * bc(x1, x2)); all other nodes zero.
Displacement3D aps_dirichlet(const HexMesh& mesh, const BoundaryFn& bc, double scale = 1.0);

struct EnergyGradient {
  double energy = 0.0;
  std::vector<std::array<double, 3>> gradient;
};

/// Reference-normalized energy sum over Gauss points of (W(F) - W(id)) and
/// its exact nodal gradient. Element inversion throws DomainError naming the
/// element; incompressible-only models are rejected.
EnergyGradient assemble_energy(const HexMesh& mesh, const Displacement3D& d, const EnergyModel& m,
                               int threads = 0);

/// First Piola-Kirchhoff stress and the 9x9 tangent (index 3*i + a for F_ia)
/// of an invariant-form energy.
struct StressTangent {
  double w = 0.0;
  std::array<double, 9> p{};
  std::array<double, 81> a{};
};
StressTangent stress_tangent(const EnergyModel& m, const Matrix3& F);

struct MinimizeOptions {
  int load_steps = 4;
  int max_newton = 80;
  double tol_factor = 1e-8;  // stop at |free gradient|_2 < tol_factor * sqrt(n^3)
  int polish_steps = 2;      // extra Newton steps after reaching the tolerance
  int threads = 0;
};

struct MinimizeResult {
  Displacement3D disp;
  double energy = 0.0;
  double residual = 0.0;
  int newton_iterations = 0;
  std::vector<double> residual_history;
};

/// Stationary point of the discrete energy with APS data on the lateral faces.
/// Throws SolverError with the residual history on failure.
MinimizeResult minimize(const HexMesh& mesh, const EnergyModel& m, const BoundaryFn& bc,
                        const MinimizeOptions& opt = {});

/// In-plane displacement magnitude sqrt(u1^2 + u2^2) per node.
std::vector<double> deviation(const Displacement3D& d);
/// Largest deviation over nodes off the lateral faces.
double max_interior_deviation(const HexMesh& mesh, const Displacement3D& d);

/// Legacy VTK unstructured grid with u_delta and displacement point data.
/// Periodic meshes are written with the x3 = 1 layer duplicated from x3 = 0.
void write_vtk(std::ostream& out, const HexMesh& mesh, const Displacement3D& d,
               const std::string& title);
/// x1,x2,u_delta,u1,u2,u3 on the node layer nearest x3 = 0.5.
void write_slice_csv(std::ostream& out, const HexMesh& mesh, const Displacement3D& d);

}  // namespace apsc
