#include "apsc/aps2d.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <ostream>

#include "apsc/conditions.hpp"
#include "apsc/error.hpp"
#include "parallel.hpp"

namespace apsc {

namespace {

constexpr std::array<double, 4> kXiA{-1.0, 1.0, 1.0, -1.0};
constexpr std::array<double, 4> kEtaA{-1.0, -1.0, 1.0, 1.0};

// Shape-function gradients at the four Gauss points of an hx x hy element.
struct Q1Table {
  std::array<std::array<std::array<double, 2>, 4>, 4> grad{};  // [qp][node][dir]
  double weight = 0.0;
};

Q1Table make_table(double hx, double hy) {
  Q1Table t;
  const double g = 1.0 / std::sqrt(3.0);
  const std::array<double, 4> qx{-g, g, g, -g}, qy{-g, -g, g, g};
  for (int q = 0; q < 4; ++q)
    for (int a = 0; a < 4; ++a) {
      t.grad[q][a][0] = 0.25 * kXiA[a] * (1.0 + kEtaA[a] * qy[q]) * 2.0 / hx;
      t.grad[q][a][1] = 0.25 * kEtaA[a] * (1.0 + kXiA[a] * qx[q]) * 2.0 / hy;
    }
  t.weight = 0.25 * hx * hy;
  return t;
}

std::array<int, 4> element_nodes(const ScalarField2D& f, int e) {
  const int ex = e % (f.nx - 1), ey = e / (f.nx - 1);
  return {f.index(ex, ey), f.index(ex + 1, ey), f.index(ex + 1, ey + 1), f.index(ex, ey + 1)};
}

struct ElementOut {
  double energy = 0.0;
  std::array<double, 4> r{};
  std::array<double, 16> k{};
};

enum class Level { Energy, Gradient, Hessian };

struct Assembly {
  double energy = 0.0;
  std::vector<double> r;
  std::vector<Eigen::Triplet<double>> k;  // free-free entries, indexed by free id
};

Assembly assemble(const EnergyModel& m, const ScalarField2D& f, const std::vector<double>& u,
                  Level level, int threads, const std::vector<int>* free_id = nullptr) {
  const Q1Table t = make_table(f.hx, f.hy);
  const int ne = (f.nx - 1) * (f.ny - 1);
  std::vector<ElementOut> out(ne);
  detail::parallel_for(ne, threads, [&](std::size_t e) {
    const auto nodes = element_nodes(f, static_cast<int>(e));
    ElementOut& o = out[e];
    for (int q = 0; q < 4; ++q) {
      double gx = 0.0, gy = 0.0;
      for (int a = 0; a < 4; ++a) {
        gx += u[nodes[a]] * t.grad[q][a][0];
        gy += u[nodes[a]] * t.grad[q][a][1];
      }
      GValues g;
      try {
        g = g_of(m, gx * gx + gy * gy);
      } catch (const DomainError& err) {
        throw DomainError("aps2d element " + std::to_string(e), err.what());
      }
      o.energy += t.weight * 0.5 * g.g;
      if (level == Level::Energy) continue;
      std::array<double, 4> dot{};
      for (int a = 0; a < 4; ++a) dot[a] = gx * t.grad[q][a][0] + gy * t.grad[q][a][1];
      for (int a = 0; a < 4; ++a) o.r[a] += t.weight * g.g1 * dot[a];
      if (level != Level::Hessian) continue;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          const double nn = t.grad[q][a][0] * t.grad[q][b][0] + t.grad[q][a][1] * t.grad[q][b][1];
          o.k[4 * a + b] += t.weight * (g.g1 * nn + 2.0 * g.g2 * dot[a] * dot[b]);
        }
    }
  });
  Assembly s;
  const double area = (f.nx - 1) * f.hx * (f.ny - 1) * f.hy;
  s.energy = -0.5 * g_of(m, 0.0).g * area;
  if (level != Level::Energy) s.r.assign(f.size(), 0.0);
  for (int e = 0; e < ne; ++e) {
    const ElementOut& o = out[e];
    s.energy += o.energy;
    if (level == Level::Energy) continue;
    const auto nodes = element_nodes(f, e);
    for (int a = 0; a < 4; ++a) s.r[nodes[a]] += o.r[a];
    if (level != Level::Hessian) continue;
    for (int a = 0; a < 4; ++a) {
      const int fa = (*free_id)[nodes[a]];
      if (fa < 0) continue;
      for (int b = 0; b < 4; ++b) {
        const int fb = (*free_id)[nodes[b]];
        if (fb >= 0) s.k.emplace_back(fa, fb, o.k[4 * a + b]);
      }
    }
  }
  return s;
}

double interior_max(const ScalarField2D& f, const std::vector<double>& r) {
  double mx = 0.0;
  for (std::size_t k = 0; k < r.size(); ++k)
    if (!f.on_boundary(static_cast<int>(k))) mx = std::max(mx, std::abs(r[k]));
  return mx;
}

}  // namespace

void ScalarField2D::enforce_boundary() {
  for (std::size_t k = 0; k < values.size(); ++k)
    if (boundary_mask[k]) values[k] = boundary_values[k];
}

ScalarField2D make_field(int nx, int ny, const BoundaryFn& bc, double lx, double ly) {
  if (nx < 2 || ny < 2) throw std::invalid_argument("make_field: need at least 2 x 2 nodes");
  ScalarField2D f;
  f.nx = nx;
  f.ny = ny;
  f.hx = lx / (nx - 1);
  f.hy = ly / (ny - 1);
  f.values.assign(nx * ny, 0.0);
  f.boundary_mask.assign(nx * ny, 0);
  f.boundary_values.assign(nx * ny, 0.0);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      if (i == 0 || j == 0 || i == nx - 1 || j == ny - 1) {
        const int k = f.index(i, j);
        f.boundary_mask[k] = 1;
        f.boundary_values[k] = bc(f.x(i), f.y(j));
      }
    }
  f.enforce_boundary();
  return f;
}

GValues g_of(const EnergyModel& m, double x) {
  if (m.has_invariant_form()) {
    const Jet2 i = 3.0 + Jet2::variable(x, 0, 1);
    const Jet2 w = m.invariant(i, i, Jet2::constant(1.0, 1));
    return {w.value(), w.d(0), w.d2(0, 0)};
  }
  // W(gamma) = g(gamma^2): recover g', g'' from the eigenvalue channel.
  const double gamma = std::sqrt(std::max(x, 1e-12));
  const Jet2 w = m.shear_path(Jet2::variable(gamma, 0, 1));
  const double g1 = w.d(0) / (2.0 * gamma);
  return {w.value(), g1, (w.d2(0, 0) - 2.0 * g1) / (4.0 * gamma * gamma)};
}

double reduced_energy(const EnergyModel& m, const ScalarField2D& f, int threads) {
  return assemble(m, f, f.values, Level::Energy, threads).energy;
}

double reduced_energy(const APS2DProblem& p) {
  return reduced_energy(p.model, p.field, p.controls.threads);
}

std::vector<double> reduced_gradient(const EnergyModel& m, const ScalarField2D& f, int threads) {
  return assemble(m, f, f.values, Level::Gradient, threads).r;
}

double residual_III(const ScalarField2D& f, const EnergyModel& m) {
  const auto r = reduced_gradient(m, f);
  return 2.0 * interior_max(f, r) / (f.hx * f.hy);
}

namespace {

void coons_fill(ScalarField2D& f) {
  const int mx = f.nx - 1, my = f.ny - 1;
  auto at = [&](int i, int j) { return f.values[f.index(i, j)]; };
  for (int j = 1; j < my; ++j)
    for (int i = 1; i < mx; ++i) {
      const double s = static_cast<double>(i) / mx, t = static_cast<double>(j) / my;
      const double edges = (1 - t) * at(i, 0) + t * at(i, my) + (1 - s) * at(0, j) + s * at(mx, j);
      const double corners = (1 - s) * (1 - t) * at(0, 0) + s * (1 - t) * at(mx, 0) +
                             (1 - s) * t * at(0, my) + s * t * at(mx, my);
      f.values[f.index(i, j)] = edges - corners;
    }
}

}  // namespace

SolveResult2D solve(const APS2DProblem& p) {
  const SolverControls2D& c = p.controls;
  SolveResult2D res;
  res.field = p.field;
  ScalarField2D& f = res.field;
  f.enforce_boundary();
  if (c.interpolated_start) coons_fill(f);

  if (!check_aps2(p.model, default_grid()).passed()) {
    if (c.strict)
      throw DomainError("aps2d::solve", "model '" + p.model.name() +
                                            "' is not APS-convex; use best-effort mode");
    res.best_effort = true;
    res.warnings.push_back(
        "model is not APS-convex: best-effort descent, the result is only a stationary point of "
        "the reduced energy and need not solve the full equilibrium equations");
  }

  std::vector<int> free_id(f.size(), -1);
  std::vector<int> free_nodes;
  for (std::size_t k = 0; k < f.size(); ++k)
    if (!f.on_boundary(static_cast<int>(k))) {
      free_id[k] = static_cast<int>(free_nodes.size());
      free_nodes.push_back(static_cast<int>(k));
    }
  const int nf = static_cast<int>(free_nodes.size());
  const double cell = f.hx * f.hy;
  double trust = 0.25;

  auto energy_at = [&](const std::vector<double>& u) {
    try {
      return assemble(p.model, f, u, Level::Energy, c.threads).energy;
    } catch (const DomainError&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  for (int it = 0;; ++it) {
    Assembly a = assemble(p.model, f, f.values, Level::Hessian, c.threads, &free_id);
    const double rnorm = interior_max(f, a.r) / cell;
    res.energy = a.energy;
    res.residual = rnorm;
    res.energy_history.push_back(a.energy);
    res.residual_history.push_back(rnorm);
    res.iterations = it;
    if (rnorm < c.grad_tol || nf == 0) break;
    if (it >= c.max_iterations)
      throw SolverError("aps2d: no convergence after " + std::to_string(it) + " iterations",
                        res.residual_history);

    Eigen::VectorXd rhs(nf);
    for (int i = 0; i < nf; ++i) rhs[i] = -a.r[free_nodes[i]];
    Eigen::SparseMatrix<double> k(nf, nf);
    k.setFromTriplets(a.k.begin(), a.k.end());

    Eigen::VectorXd step;
    bool newton = false;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(k);
    if (ldlt.info() == Eigen::Success && ldlt.vectorD().minCoeff() > 0.0) {
      step = ldlt.solve(rhs);
      newton = ldlt.info() == Eigen::Success && step.dot(rhs) > 0.0 && step.allFinite();
    }
    if (!newton) {
      step.resize(nf);
      for (int i = 0; i < nf; ++i) {
        const double d = k.coeff(i, i);
        step[i] = rhs[i] / (d > 0.0 ? d : cell);
      }
      const double mx = step.cwiseAbs().maxCoeff();
      if (mx > trust) step *= trust / mx;
      const std::string w = "indefinite Hessian, gradient steps taken";
      if (res.warnings.empty() || res.warnings.back() != w) res.warnings.push_back(w);
    }

    const double slope = -step.dot(rhs);  // directional derivative, negative
    std::vector<double> trial = f.values;
    auto apply = [&](double t) {
      for (int i = 0; i < nf; ++i) trial[free_nodes[i]] = f.values[free_nodes[i]] + t * step[i];
    };
    // Below roundoff the energy cannot certify decrease; trust the Newton step.
    if (newton && std::abs(slope) < 1e-13 * std::max(1.0, std::abs(a.energy))) {
      apply(1.0);
      f.values = trial;
      continue;
    }
    double t = 1.0;
    bool accepted = false;
    for (int b = 0; b <= c.max_backtracks; ++b, t *= c.backtrack) {
      apply(t);
      const double e = energy_at(trial);
      if (e <= a.energy + c.armijo * t * slope) {
        accepted = true;
        break;
      }
    }
    if (!accepted)
      throw SolverError("aps2d: line search failed", res.residual_history);
    if (!newton) trust = t == 1.0 ? std::min(2.0 * trust, 1.0) : std::max(0.5 * trust, 1e-8);
    f.values = trial;
  }
  return res;
}

namespace {

std::vector<double> sor(const ScalarField2D& f, bool nine_point, double tol, int max_sweeps) {
  if (std::abs(f.hx - f.hy) > 1e-14 * f.hx)
    throw std::invalid_argument("harmonic oracle needs a square grid");
  std::vector<double> u = f.values;
  for (std::size_t k = 0; k < u.size(); ++k) u[k] = f.on_boundary(static_cast<int>(k)) ? f.boundary_values[k] : 0.0;
  const double pi = 3.14159265358979323846;
  const double omega = 2.0 / (1.0 + std::sin(pi / (f.nx - 1)));
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double change = 0.0;
    for (int j = 1; j < f.ny - 1; ++j)
      for (int i = 1; i < f.nx - 1; ++i) {
        const int k = f.index(i, j);
        double target;
        const double edge = u[k - 1] + u[k + 1] + u[k - f.nx] + u[k + f.nx];
        if (nine_point) {
          const double corner = u[k - f.nx - 1] + u[k - f.nx + 1] + u[k + f.nx - 1] + u[k + f.nx + 1];
          target = (edge + corner) / 8.0;
        } else {
          target = edge / 4.0;
        }
        const double d = omega * (target - u[k]);
        u[k] += d;
        change = std::max(change, std::abs(d));
      }
    if (change < tol) return u;
  }
  throw SolverError("harmonic oracle: SOR did not converge", {});
}

}  // namespace

std::vector<double> harmonic_q1(const ScalarField2D& f, double tol, int max_sweeps) {
  return sor(f, true, tol, max_sweeps);
}

std::vector<double> harmonic_5pt(const ScalarField2D& f, double tol, int max_sweeps) {
  return sor(f, false, tol, max_sweeps);
}

void write_field_csv(std::ostream& out, const ScalarField2D& f) {
  out << "x1,x2,u\n";
  out.precision(17);
  for (int j = 0; j < f.ny; ++j)
    for (int i = 0; i < f.nx; ++i) out << f.x(i) << ',' << f.y(j) << ',' << f.values[f.index(i, j)] << '\n';
}

}  // namespace apsc
