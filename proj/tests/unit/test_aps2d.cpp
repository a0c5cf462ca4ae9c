#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "apsc/aps2d.hpp"
#include "apsc/boundary.hpp"
#include "apsc/catalog.hpp"
#include "apsc/error.hpp"

using namespace apsc;
using doctest::Approx;

namespace {

double max_interior(const ScalarField2D& f, const std::vector<double>& other) {
  double m = 0.0;
  for (int j = 1; j < f.ny - 1; ++j)
    for (int i = 1; i < f.nx - 1; ++i)
      m = std::max(m, std::abs(f.values[f.index(i, j)] - other[f.index(i, j)]));
  return m;
}

ScalarField2D field_from(int n, const BoundaryFn& u) {
  ScalarField2D f = make_field(n, n, u);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) f.values[f.index(i, j)] = u(f.x(i), f.y(j));
  return f;
}

}  // namespace

TEST_CASE("field construction") {
  const ScalarField2D f = make_field(5, 4, affine_boundary(1, 2, 3), 2.0, 1.5);
  CHECK(f.hx == Approx(0.5));
  CHECK(f.hy == Approx(0.5));
  CHECK(f.size() == 20);
  int boundary = 0;
  for (std::size_t k = 0; k < f.size(); ++k) boundary += f.on_boundary(static_cast<int>(k));
  CHECK(boundary == 14);
  CHECK(f.values[f.index(4, 3)] == Approx(1 * 2.0 + 2 * 1.5 + 3));
  CHECK(f.values[f.index(2, 1)] == 0.0);
  CHECK_THROWS_AS(make_field(1, 5, affine_boundary(0, 0, 0)), std::invalid_argument);
}

TEST_CASE("reduced energy") {
  const auto nh = find_model("neo-hooke");
  const ScalarField2D zero = make_field(9, 9, affine_boundary(0, 0, 0));
  CHECK(reduced_energy(nh, zero) == 0.0);

  const auto ex = find_model("exp-hencky");
  const ScalarField2D aff = field_from(9, affine_boundary(std::sqrt(0.1), 0.0, 0.4));
  const double g01 = ex.invariant({3.1, 3.1, 1.0});
  const double g00 = ex.invariant({3.0, 3.0, 1.0});
  CHECK(reduced_energy(ex, aff) == Approx(0.5 * (g01 - g00)).epsilon(1e-12));
}

TEST_CASE("reduced energy converges at second order") {
  const auto m = find_model("mooney-rivlin");
  const auto u = [](double x, double y) { return 0.3 * std::sin(2 * x) * std::cos(y) + 0.2 * x * y; };
  const double e1 = reduced_energy(m, field_from(17, u));
  const double e2 = reduced_energy(m, field_from(33, u));
  const double e3 = reduced_energy(m, field_from(65, u));
  const double ratio = (e1 - e2) / (e2 - e3);
  CHECK(ratio == Approx(4.0).epsilon(0.05));
}

TEST_CASE("gradient against central differences") {
  const auto m = find_model("veronda-westman");
  ScalarField2D f = make_field(9, 9, default_boundary());
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  for (std::size_t k = 0; k < f.size(); ++k)
    if (!f.on_boundary(static_cast<int>(k))) f.values[k] = u(rng);
  const std::vector<double> g = reduced_gradient(m, f);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(f.size()) - 1);
  int checked = 0;
  while (checked < 20) {
    const int k = pick(rng);
    if (f.on_boundary(k)) continue;
    const double h = 1e-6;
    ScalarField2D p = f, q = f;
    p.values[k] += h;
    q.values[k] -= h;
    const double fd = (reduced_energy(m, p) - reduced_energy(m, q)) / (2 * h);
    CHECK(std::abs(g[k] - fd) <= 1e-6 * std::max(std::abs(fd), 1e-3));
    ++checked;
  }
}

TEST_CASE("affine data is reproduced exactly") {
  for (const char* name : {"neo-hooke", "blatz-ko", "knowles", "martin-neff"}) {
    CAPTURE(name);
    const BoundaryFn bc = affine_boundary(0.2, -0.7, 0.4);
    const SolveResult2D r = solve({find_model(name), make_field(33, 33, bc), {}});
    const ScalarField2D exact = field_from(33, bc);
    CHECK(max_interior(r.field, exact.values) < 1e-10);
    CHECK(residual_III(exact, find_model(name)) < 1e-10);
  }
}

TEST_CASE("steep path function on a non-square grid") {
  const auto vw = find_model("veronda-westman");
  const SolveResult2D s = solve({vw, make_field(33, 17, default_boundary()), {}});
  CHECK(s.residual < 1e-10);
  CHECK(residual_III(s.field, vw) < 1e-8);
  const SolveResult2D a = solve({vw, make_field(33, 17, affine_boundary(0.4, -0.7, 0.2)), {}});
  for (int j = 0; j < 17; ++j)
    for (int i = 0; i < 33; ++i)
      CHECK(std::abs(a.field.values[a.field.index(i, j)] -
                     (0.4 * a.field.x(i) - 0.7 * a.field.y(j) + 0.2)) < 1e-10);
}

TEST_CASE("zero data gives the zero field") {
  const SolveResult2D r =
      solve({find_model("bazant"), make_field(17, 17, affine_boundary(0, 0, 0)), {}});
  for (double v : r.field.values) CHECK(v == 0.0);
}

TEST_CASE("same path function, same solution") {
  const auto bc = default_boundary();
  const SolveResult2D a = solve({find_model("neo-hooke"), make_field(33, 33, bc), {}});
  const SolveResult2D b =
      solve({find_model("mooney-rivlin").with_param("alpha", 0.2), make_field(33, 33, bc), {}});
  CHECK(max_interior(a.field, b.field.values) < 1e-9);
}

TEST_CASE("solver postconditions") {
  const auto m = find_model("exp-hencky");
  const SolveResult2D r = solve({m, make_field(33, 33, default_boundary(0.4)), {}});
  CHECK(r.residual < 1e-10);
  CHECK(residual_III(r.field, m) < 1e-8);
  for (std::size_t k = 1; k < r.energy_history.size(); ++k)
    CHECK(r.energy_history[k] <= r.energy_history[k - 1] + 1e-14);
  for (std::size_t k = 0; k < r.field.size(); ++k)
    if (r.field.on_boundary(static_cast<int>(k)))
      CHECK(r.field.values[k] == r.field.boundary_values[k]);

  ScalarField2D bumped = r.field;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e-2, 1e-2);
  for (std::size_t k = 0; k < bumped.size(); ++k)
    if (!bumped.on_boundary(static_cast<int>(k))) bumped.values[k] += u(rng);
  CHECK(residual_III(bumped, m) > 1e-4);
}

TEST_CASE("quadratic limit is the discrete harmonic function") {
  const auto lap = make_dsl_energy("I1-3", {});
  const ScalarField2D f = make_field(33, 33, default_boundary());
  const SolveResult2D r = solve({lap, f, {}});
  const std::vector<double> h = harmonic_q1(f);
  CHECK(max_interior(r.field, h) < 1e-9);
  const double lo = *std::min_element(f.boundary_values.begin(), f.boundary_values.end());
  const double hi = *std::max_element(f.boundary_values.begin(), f.boundary_values.end());
  for (double v : r.field.values) {
    CHECK(v >= lo - 1e-12);
    CHECK(v <= hi + 1e-12);
  }
  const std::vector<double> five = harmonic_5pt(f);
  CHECK(max_interior(r.field, five) < 5e-3);
}

TEST_CASE("strict mode rejects a non-convex path function") {
  const auto h = find_model("hencky");
  CHECK_THROWS_AS(solve({h, make_field(17, 17, default_boundary()), {}}), DomainError);
  APS2DProblem p{h, make_field(17, 17, default_boundary(0.05)), {}};
  p.controls.strict = false;
  const SolveResult2D r = solve(p);
  CHECK(r.best_effort);
  CHECK_FALSE(r.warnings.empty());
  CHECK(r.residual < 1e-10);
}

TEST_CASE("thread count does not change the result") {
  const auto m = find_model("knowles");
  APS2DProblem p{m, make_field(33, 33, default_boundary()), {}};
  const SolveResult2D a = solve(p);
  p.controls.threads = 3;
  const SolveResult2D b = solve(p);
  CHECK(a.field.values == b.field.values);
  CHECK(a.energy == b.energy);
}

TEST_CASE("csv field output") {
  const ScalarField2D f = field_from(3, affine_boundary(1, 0, 0));
  std::ostringstream o;
  write_field_csv(o, f);
  const std::string s = o.str();
  CHECK(s.rfind("x1,x2,u\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 10);
}
