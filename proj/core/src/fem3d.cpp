#include "apsc/fem3d.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "apsc/error.hpp"
#include "apsc/vtk_io.hpp"
#include "parallel.hpp"

namespace apsc {

namespace {

constexpr int kDofs = 24;

int eps(int i, int j, int k) { return (i - j) * (j - k) * (k - i) / 2; }

struct Hex8Table {
  std::array<std::array<std::array<double, 3>, 8>, 8> grad{};  // [qp][node][dir]
  double weight = 0.0;
};

Hex8Table make_table(double h) {
  static constexpr int sx[8] = {-1, 1, 1, -1, -1, 1, 1, -1};
  static constexpr int sy[8] = {-1, -1, 1, 1, -1, -1, 1, 1};
  static constexpr int sz[8] = {-1, -1, -1, -1, 1, 1, 1, 1};
  const double g = 1.0 / std::sqrt(3.0);
  Hex8Table t;
  for (int q = 0; q < 8; ++q) {
    const double x = g * sx[q], y = g * sy[q], z = g * sz[q];
    for (int a = 0; a < 8; ++a) {
      t.grad[q][a][0] = 0.125 * sx[a] * (1 + sy[a] * y) * (1 + sz[a] * z) * 2.0 / h;
      t.grad[q][a][1] = 0.125 * sy[a] * (1 + sx[a] * x) * (1 + sz[a] * z) * 2.0 / h;
      t.grad[q][a][2] = 0.125 * sz[a] * (1 + sx[a] * x) * (1 + sy[a] * y) * 2.0 / h;
    }
  }
  t.weight = h * h * h / 8.0;
  return t;
}

struct ElementOut {
  double energy = 0.0;
  std::array<double, kDofs> r{};
  std::array<double, kDofs * kDofs> k{};
};

enum class Level { Energy, Gradient, Hessian };

struct Assembly {
  double energy = 0.0;
  std::vector<double> r;  // per dof
  std::vector<Eigen::Triplet<double>> k;
};

Assembly assemble(const HexMesh& mesh, const std::vector<std::array<double, 3>>& u,
                  const EnergyModel& m, Level level, int threads,
                  const std::vector<int>* free_id = nullptr) {
  if (!m.compressible())
    throw DomainError("fem3d", "model '" + m.name() +
                                   "' is incompressible-only; use quasi_incompressible");
  const Hex8Table t = make_table(mesh.h);
  const double w_ref = m.evaluate(Matrix3::identity());
  const std::size_t ne = mesh.elements.size();
  std::vector<ElementOut> out(ne);
  detail::parallel_for(ne, threads, [&](std::size_t e) {
    const auto& nodes = mesh.elements[e];
    ElementOut& o = out[e];
    for (int q = 0; q < 8; ++q) {
      Matrix3 F = Matrix3::identity();
      for (int a = 0; a < 8; ++a)
        for (int i = 0; i < 3; ++i)
          for (int A = 0; A < 3; ++A) F(i, A) += u[nodes[a]][i] * t.grad[q][a][A];
      StressTangent st;
      try {
        if (level == Level::Energy) {
          st.w = m.evaluate(F);
        } else {
          st = stress_tangent(m, F);
        }
      } catch (const DomainError& err) {
        throw DomainError("fem3d element " + std::to_string(e), err.what());
      }
      o.energy += t.weight * (st.w - w_ref);
      if (level == Level::Energy) continue;
      for (int a = 0; a < 8; ++a)
        for (int i = 0; i < 3; ++i) {
          double s = 0.0;
          for (int A = 0; A < 3; ++A) s += st.p[3 * i + A] * t.grad[q][a][A];
          o.r[3 * a + i] += t.weight * s;
        }
      if (level != Level::Hessian) continue;
      // G[a][j][iA] = sum_B A[iA, jB] grad_b B, contracted later with grad_a.
      for (int b = 0; b < 8; ++b)
        for (int j = 0; j < 3; ++j) {
          std::array<double, 9> col{};
          for (int iA = 0; iA < 9; ++iA) {
            double s = 0.0;
            for (int B = 0; B < 3; ++B) s += st.a[9 * iA + 3 * j + B] * t.grad[q][b][B];
            col[iA] = s;
          }
          for (int a = 0; a < 8; ++a)
            for (int i = 0; i < 3; ++i) {
              double s = 0.0;
              for (int A = 0; A < 3; ++A) s += col[3 * i + A] * t.grad[q][a][A];
              o.k[(3 * a + i) * kDofs + 3 * b + j] += t.weight * s;
            }
        }
    }
  });

  Assembly s;
  if (level != Level::Energy) s.r.assign(3 * u.size(), 0.0);
  if (level == Level::Hessian) s.k.reserve(ne * kDofs * kDofs / 2);
  for (std::size_t e = 0; e < ne; ++e) {
    const ElementOut& o = out[e];
    s.energy += o.energy;
    if (level == Level::Energy) continue;
    const auto& nodes = mesh.elements[e];
    for (int a = 0; a < 8; ++a)
      for (int i = 0; i < 3; ++i) s.r[3 * nodes[a] + i] += o.r[3 * a + i];
    if (level != Level::Hessian) continue;
    for (int x = 0; x < kDofs; ++x) {
      const int fx = (*free_id)[3 * nodes[x / 3] + x % 3];
      if (fx < 0) continue;
      for (int y = 0; y < kDofs; ++y) {
        const int fy = (*free_id)[3 * nodes[y / 3] + y % 3];
        if (fy >= 0) s.k.emplace_back(fx, fy, o.k[x * kDofs + y]);
      }
    }
  }
  return s;
}

}  // namespace

std::array<double, 3> HexMesh::coord(int id) const {
  const int i = id % n, j = (id / n) % n, k = id / (n * n);
  return {i * h, j * h, k * h};
}

bool HexMesh::lateral(int id) const {
  const int i = id % n, j = (id / n) % n;
  return i == 0 || j == 0 || i == n - 1 || j == n - 1;
}

HexMesh make_unit_cube(int n, EndCondition ends) {
  if (n < 3) throw std::invalid_argument("make_unit_cube: need n >= 3");
  HexMesh m;
  m.n = n;
  m.h = 1.0 / (n - 1);
  m.ends = ends;
  const int layers = m.layers();
  for (int k = 0; k < n - 1; ++k) {
    const int k1 = ends == EndCondition::Periodic ? (k + 1) % layers : k + 1;
    for (int j = 0; j < n - 1; ++j)
      for (int i = 0; i < n - 1; ++i)
        m.elements.push_back({m.node(i, j, k), m.node(i + 1, j, k), m.node(i + 1, j + 1, k),
                              m.node(i, j + 1, k), m.node(i, j, k1), m.node(i + 1, j, k1),
                              m.node(i + 1, j + 1, k1), m.node(i, j + 1, k1)});
  }
  return m;
}

Displacement3D aps_dirichlet(const HexMesh& mesh, const BoundaryFn& bc, double scale) {
  Displacement3D d;
  const int nn = mesh.num_nodes();
  d.u.assign(nn, {0.0, 0.0, 0.0});
  d.dirichlet.assign(nn, 0);
  for (int id = 0; id < nn; ++id) {
    if (!mesh.lateral(id)) continue;
    const auto x = mesh.coord(id);
    d.dirichlet[id] = 1;
    d.u[id] = {0.0, 0.0, scale * bc(x[0], x[1])};
  }
  return d;
}

StressTangent stress_tangent(const EnergyModel& m, const Matrix3& F) {
  const InvariantTriple inv = invariants_of(F);
  const Jet2 w = m.invariant_jet(inv);
  const Matrix3 Ft = F.transpose();
  const Matrix3 C = Ft * F;
  const Matrix3 B = F * Ft;
  const Matrix3 BF = B * F;
  const Matrix3 cof = F.cofactor();
  const double J = F.det();

  std::array<double, 9> d1{}, d2{}, d3{};
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 3; ++a) {
      d1[3 * i + a] = 2.0 * F(i, a);
      d2[3 * i + a] = 2.0 * (inv.i1 * F(i, a) - BF(i, a));
      d3[3 * i + a] = 2.0 * J * cof(i, a);
    }
  const double w1 = w.d(0), w2 = w.d(1), w3 = w.d(2);
  StressTangent st;
  st.w = w.value();
  for (int k = 0; k < 9; ++k) st.p[k] = w1 * d1[k] + w2 * d2[k] + w3 * d3[k];

  const std::array<const std::array<double, 9>*, 3> d{&d1, &d2, &d3};
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 3; ++a)
      for (int j = 0; j < 3; ++j)
        for (int b = 0; b < 3; ++b) {
          const double dij = i == j, dab = a == b;
          const double h1 = 2.0 * dij * dab;
          const double h2 = 4.0 * F(i, a) * F(j, b) + 2.0 * inv.i1 * dij * dab -
                            2.0 * (dij * C(a, b) + F(i, b) * F(j, a) + dab * B(i, j));
          double d2j = 0.0;
          for (int k = 0; k < 3; ++k)
            for (int c = 0; c < 3; ++c) d2j += eps(i, j, k) * eps(a, b, c) * F(k, c);
          const double h3 = 2.0 * cof(i, a) * cof(j, b) + 2.0 * J * d2j;
          const int x = 3 * i + a, y = 3 * j + b;
          double v = w1 * h1 + w2 * h2 + w3 * h3;
          for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 3; ++q) v += w.d2(p, q) * (*d[p])[x] * (*d[q])[y];
          st.a[9 * x + y] = v;
        }
  return st;
}

EnergyGradient assemble_energy(const HexMesh& mesh, const Displacement3D& d, const EnergyModel& m,
                               int threads) {
  const Assembly a = assemble(mesh, d.u, m, Level::Gradient, threads);
  EnergyGradient out;
  out.energy = a.energy;
  out.gradient.resize(d.u.size());
  for (std::size_t n = 0; n < d.u.size(); ++n)
    for (int i = 0; i < 3; ++i) out.gradient[n][i] = a.r[3 * n + i];
  return out;
}

MinimizeResult minimize(const HexMesh& mesh, const EnergyModel& m, const BoundaryFn& bc,
                        const MinimizeOptions& opt) {
  MinimizeResult res;
  res.disp = aps_dirichlet(mesh, bc, 0.0);
  auto& u = res.disp.u;
  const int nn = mesh.num_nodes();

  std::vector<int> free_id(3 * nn, -1);
  std::vector<int> free_dofs;
  for (int id = 0; id < nn; ++id) {
    if (res.disp.dirichlet[id]) continue;
    for (int i = 0; i < 3; ++i) {
      free_id[3 * id + i] = static_cast<int>(free_dofs.size());
      free_dofs.push_back(3 * id + i);
    }
  }
  const int nf = static_cast<int>(free_dofs.size());
  const double final_tol = opt.tol_factor * std::sqrt(std::pow(mesh.n, 3));
  const double stage_tol = std::max(final_tol, 1e-6 * std::sqrt(std::pow(mesh.n, 3)));

  auto free_norm = [&](const std::vector<double>& r) {
    double s = 0.0;
    for (int dof : free_dofs) s += r[dof] * r[dof];
    return std::sqrt(s);
  };
  auto energy_at = [&](const std::vector<std::array<double, 3>>& v) {
    try {
      return assemble(mesh, v, m, Level::Energy, opt.threads).energy;
    } catch (const DomainError&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  const int steps = std::max(1, opt.load_steps);
  for (int s = 1; s <= steps; ++s) {
    const double load = static_cast<double>(s) / steps;
    for (int id = 0; id < nn; ++id)
      if (res.disp.dirichlet[id]) {
        const auto x = mesh.coord(id);
        u[id] = {0.0, 0.0, load * bc(x[0], x[1])};
      }
    const bool last = s == steps;
    const double tol = last ? final_tol : stage_tol;
    int polish = last ? opt.polish_steps : 0;
    bool converged = false;
    for (int it = 0; it <= opt.max_newton; ++it) {
      Assembly a = assemble(mesh, u, m, Level::Hessian, opt.threads, &free_id);
      const double rnorm = free_norm(a.r);
      res.energy = a.energy;
      res.residual = rnorm;
      res.residual_history.push_back(rnorm);
      if (nf == 0) {
        converged = true;
        break;
      }
      if (rnorm < tol) {
        converged = true;
        if (polish-- <= 0 || rnorm == 0.0) break;
      }
      if (it == opt.max_newton) break;

      Eigen::VectorXd rhs(nf);
      for (int i = 0; i < nf; ++i) rhs[i] = -a.r[free_dofs[i]];
      Eigen::SparseMatrix<double> k(nf, nf);
      k.setFromTriplets(a.k.begin(), a.k.end());
      double diag_max = 0.0;
      for (int i = 0; i < nf; ++i) diag_max = std::max(diag_max, std::abs(k.coeff(i, i)));

      Eigen::VectorXd step;
      bool pure_newton = true;
      Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
      ldlt.analyzePattern(k);
      double lambda = 0.0;
      for (int attempt = 0; attempt < 30; ++attempt) {
        Eigen::SparseMatrix<double> shifted = k;
        if (lambda > 0.0)
          for (int i = 0; i < nf; ++i) shifted.coeffRef(i, i) += lambda;
        ldlt.factorize(shifted);
        if (ldlt.info() == Eigen::Success && ldlt.vectorD().minCoeff() > 0.0) {
          step = ldlt.solve(rhs);
          if (step.allFinite() && step.dot(rhs) > 0.0) break;
        }
        step.resize(0);
        pure_newton = false;
        lambda = lambda == 0.0 ? 1e-8 * std::max(diag_max, 1.0) : 10.0 * lambda;
      }
      if (step.size() == 0)
        throw SolverError("fem3d: could not find a descent direction", res.residual_history);

      const double slope = -step.dot(rhs);
      std::vector<std::array<double, 3>> trial = u;
      auto apply = [&](double t) {
        for (int i = 0; i < nf; ++i) {
          const int dof = free_dofs[i];
          trial[dof / 3][dof % 3] = u[dof / 3][dof % 3] + t * step[i];
        }
      };
      if (rnorm < tol) {
        // polish step, kept only if the residual drops
        apply(1.0);
        const Assembly b = assemble(mesh, trial, m, Level::Gradient, opt.threads);
        if (free_norm(b.r) < rnorm) {
          u = trial;
          res.energy = b.energy;
          res.residual = free_norm(b.r);
          res.residual_history.push_back(res.residual);
        }
        break;
      }
      if (pure_newton && std::abs(slope) < 1e-13 * std::max(1.0, std::abs(a.energy))) {
        apply(1.0);
        u = trial;
        continue;
      }
      double t = 1.0;
      bool accepted = false;
      for (int b = 0; b < 60; ++b, t *= 0.5) {
        apply(t);
        if (energy_at(trial) <= a.energy + 1e-4 * t * slope) {
          accepted = true;
          break;
        }
      }
      if (!accepted) throw SolverError("fem3d: line search failed", res.residual_history);
      u = trial;
      res.newton_iterations++;
    }
    if (!converged)
      throw SolverError("fem3d: no convergence at load step " + std::to_string(s),
                        res.residual_history);
  }
  return res;
}

std::vector<double> deviation(const Displacement3D& d) {
  std::vector<double> out(d.u.size());
  for (std::size_t i = 0; i < d.u.size(); ++i) out[i] = std::hypot(d.u[i][0], d.u[i][1]);
  return out;
}

double max_interior_deviation(const HexMesh& mesh, const Displacement3D& d) {
  double mx = 0.0;
  const auto dev = deviation(d);
  for (int id = 0; id < mesh.num_nodes(); ++id)
    if (!mesh.lateral(id)) mx = std::max(mx, dev[id]);
  return mx;
}

namespace {

// Node layout with n full layers; periodic meshes repeat layer 0 on top.
int full_to_mesh(const HexMesh& mesh, int i, int j, int k) {
  return mesh.node(i, j, k % mesh.layers());
}

}  // namespace

void write_vtk(std::ostream& out, const HexMesh& mesh, const Displacement3D& d,
               const std::string& title) {
  const int n = mesh.n;
  VtkHexGrid g;
  const auto dev = deviation(d);
  std::vector<double> ud;
  std::vector<std::array<double, 3>> disp;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const int id = full_to_mesh(mesh, i, j, k);
        g.points.push_back({i * mesh.h, j * mesh.h, k * mesh.h});
        ud.push_back(dev[id]);
        disp.push_back(d.u[id]);
      }
  auto full = [n](int i, int j, int k) { return i + n * (j + n * k); };
  for (int k = 0; k < n - 1; ++k)
    for (int j = 0; j < n - 1; ++j)
      for (int i = 0; i < n - 1; ++i)
        g.cells.push_back({full(i, j, k), full(i + 1, j, k), full(i + 1, j + 1, k), full(i, j + 1, k),
                           full(i, j, k + 1), full(i + 1, j, k + 1), full(i + 1, j + 1, k + 1),
                           full(i, j + 1, k + 1)});
  g.scalars.emplace_back("u_delta", std::move(ud));
  g.vectors.emplace_back("displacement", std::move(disp));
  write_vtk_unstructured(out, g, title);
}

void write_slice_csv(std::ostream& out, const HexMesh& mesh, const Displacement3D& d) {
  const int k = static_cast<int>(std::lround(0.5 / mesh.h)) % mesh.layers();
  const auto dev = deviation(d);
  out.precision(17);
  out << "# x3 = " << k * mesh.h << "\nx1,x2,u_delta,u1,u2,u3\n";
  for (int j = 0; j < mesh.n; ++j)
    for (int i = 0; i < mesh.n; ++i) {
      const int id = mesh.node(i, j, k);
      out << i * mesh.h << ',' << j * mesh.h << ',' << dev[id] << ',' << d.u[id][0] << ','
          << d.u[id][1] << ',' << d.u[id][2] << '\n';
    }
}

}  // namespace apsc
