#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "apsc/boundary.hpp"
#include "apsc/energy.hpp"

namespace apsc {

/// Nodal height field on a structured nx x ny grid over [0,lx] x [0,ly].
/// Node (i, j) sits at (i*hx, j*hy) and has index j*nx + i.
struct ScalarField2D {
  int nx = 0;
  int ny = 0;
  double hx = 0.0;
  double hy = 0.0;
  std::vector<double> values;
  std::vector<std::uint8_t> boundary_mask;
  std::vector<double> boundary_values;

  int index(int i, int j) const { return j * nx + i; }
  double x(int i) const { return i * hx; }
  double y(int j) const { return j * hy; }
  bool on_boundary(int k) const { return boundary_mask[k] != 0; }
  std::size_t size() const { return values.size(); }
  /// Copies boundary_values into values on masked nodes.
  void enforce_boundary();
};

/// Field with the outer ring of nodes prescribed by `bc` and zero interior.
ScalarField2D make_field(int nx, int ny, const BoundaryFn& bc, double lx = 1.0, double ly = 1.0);

/// g(x) = W(3+x, 3+x, 1) with g' and g''.
struct GValues {
  double g = 0.0;
  double g1 = 0.0;
  double g2 = 0.0;
};
GValues g_of(const EnergyModel& m, double x);

struct SolverControls2D {
  int max_iterations = 200;
  double grad_tol = 1e-10;  // on max |r_a| / (hx hy)
  double armijo = 1e-4;
  double backtrack = 0.5;
  int max_backtracks = 60;
  bool strict = true;  // reject models failing APS2 instead of running best effort
  /// Start from the transfinite interpolation of the boundary data
  /// instead of the interior values of the given field.
  bool interpolated_start = true;
  int threads = 1;
};

struct APS2DProblem {
  EnergyModel model;
  ScalarField2D field;
  SolverControls2D controls;
};

struct SolveResult2D {
  ScalarField2D field;
  int iterations = 0;
  double energy = 0.0;
  double residual = 0.0;  // final max |r_a| / (hx hy)
  std::vector<double> energy_history;
  std::vector<double> residual_history;
  bool best_effort = false;
  std::vector<std::string> warnings;
};

/// Bilinear-element quadrature (2x2 Gauss) of g(|grad u|^2)/2 minus g(0)/2 * area.
/// DomainError from the model is rethrown with the element index.
double reduced_energy(const EnergyModel& m, const ScalarField2D& f, int threads = 1);
double reduced_energy(const APS2DProblem& p);

/// Derivative of reduced_energy with respect to every nodal value; boundary
/// entries included (they are simply not free).
std::vector<double> reduced_gradient(const EnergyModel& m, const ScalarField2D& f, int threads = 1);

/// max over interior nodes of |div(H grad u)| in its assembled form
/// 2 |r_a| / (hx hy), with H = 2 g'.
double residual_III(const ScalarField2D& f, const EnergyModel& m);

/// Newton on the reduced energy with Armijo backtracking. Indefinite or
/// failed factorizations fall back to a diagonally scaled gradient step
/// inside a trust region. Throws SolverError on non-convergence and
/// DomainError in strict mode when the model is not APS-convex.
SolveResult2D solve(const APS2DProblem& p);

/// Discrete harmonic function for the bilinear-element Laplacian on a square
/// grid (u = mean of the 8 neighbours), by SOR. Requires hx == hy.
std::vector<double> harmonic_q1(const ScalarField2D& f, double tol = 1e-14, int max_sweeps = 100000);
/// Same for the 5-point Laplacian.
std::vector<double> harmonic_5pt(const ScalarField2D& f, double tol = 1e-14, int max_sweeps = 100000);

/// x1,x2,u rows.
void write_field_csv(std::ostream& out, const ScalarField2D& f);

}  // namespace apsc
