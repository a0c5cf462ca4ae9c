#include <doctest.h>

#include <cmath>
#include <random>

#include "apsc/error.hpp"
#include "apsc/kinematics.hpp"

using namespace apsc;
using doctest::Approx;

namespace {

Matrix3 product_transpose(const Matrix3& f) {
  Matrix3 b;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) b(i, j) += f(i, k) * f(j, k);
  return b;
}

}  // namespace

TEST_CASE("APS deformation gradient") {
  CHECK(aps_deformation_gradient({0.0, 0.0}) == Matrix3::identity());
  const Matrix3 f = aps_deformation_gradient({1.0, 0.0});
  CHECK(f(2, 0) == 1.0);
  CHECK(f(2, 1) == 0.0);
  CHECK(f(2, 2) == 1.0);
  CHECK(f(0, 0) == 1.0);
  CHECK(f(0, 2) == 0.0);
  CHECK(aps_deformation_gradient({0.3, 0.4}).det() == 1.0);
}

TEST_CASE("invariants on known states") {
  const InvariantTriple id = invariants_of(Matrix3::identity());
  CHECK(id.i1 == 3.0);
  CHECK(id.i2 == 3.0);
  CHECK(id.i3 == 1.0);
  const InvariantTriple a = invariants_of(aps_deformation_gradient({1.0, 0.0}));
  CHECK(a.i1 == Approx(4.0));
  CHECK(a.i2 == Approx(4.0));
  CHECK(a.i3 == Approx(1.0));
  const InvariantTriple s = invariants_of(simple_shear_gradient(2.0));
  CHECK(s.i1 == Approx(7.0));
  CHECK(s.i2 == Approx(7.0));
  CHECK(s.i3 == Approx(1.0));

  Matrix3 flip = Matrix3::identity();
  flip(2, 2) = -1.0;
  CHECK_THROWS_AS(invariants_of(flip), DomainError);
}

TEST_CASE("invariants match the characteristic polynomial of B") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (int t = 0; t < 50; ++t) {
    Matrix3 f = Matrix3::identity();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) f(i, j) += u(rng);
    if (f.det() <= 0.05) continue;
    const Matrix3 b = product_transpose(f);
    const double i1 = b(0, 0) + b(1, 1) + b(2, 2);
    double i2 = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) i2 += b(i, i) * b(j, j) - b(i, j) * b(j, i);
    const InvariantTriple inv = invariants_of(f);
    CHECK(inv.i1 == Approx(i1).epsilon(1e-13));
    CHECK(inv.i2 == Approx(i2).epsilon(1e-12));
    CHECK(inv.i3 == Approx(f.det() * f.det()).epsilon(1e-12));
  }
}

TEST_CASE("APS family stays on I1 = I2, I3 = 1") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int t = 0; t < 200; ++t) {
    const APSGradient g{u(rng), u(rng)};
    const InvariantTriple inv = invariants_of(aps_deformation_gradient(g));
    const double expect = 3.0 + g.gamma_sq();
    CHECK(std::abs(inv.i1 - expect) <= 1e-13 * expect);
    CHECK(std::abs(inv.i2 - expect) <= 1e-13 * expect);
    CHECK(std::abs(inv.i3 - 1.0) <= 1e-13);
  }
}

TEST_CASE("simple shear gradient") {
  CHECK(simple_shear_gradient(0.0) == Matrix3::identity());
  const Matrix3 f = simple_shear_gradient(1.0);
  CHECK(f(0, 1) == 1.0);
  CHECK(f.det() == 1.0);
  const Matrix3 b = product_transpose(f);
  CHECK(b(0, 0) == 2.0);
  CHECK(b(0, 1) == 1.0);
  CHECK(b(1, 0) == 1.0);
  CHECK(b(1, 1) == 1.0);
}

TEST_CASE("simple shear eigenvalues") {
  const auto z = simple_shear_eigenvalues(Jet2(0.0));
  for (const auto& l : z) CHECK(l.value() == Approx(1.0));

  // Oracle: roots of l^2 - 3 l + 1 by the quadratic formula.
  const auto one = simple_shear_eigenvalues(Jet2(1.0));
  CHECK(one[0].value() == Approx((3.0 + std::sqrt(5.0)) / 2.0));
  CHECK(one[1].value() == Approx((3.0 - std::sqrt(5.0)) / 2.0));
  CHECK(one[0].value() == Approx(2.618034).epsilon(1e-6));
  CHECK(one[1].value() == Approx(0.381966).epsilon(1e-6));

  for (int k = 0; k <= 500; ++k) {
    const double g = 0.1 * k;
    const auto l = simple_shear_eigenvalues(Jet2(g));
    CHECK(std::abs(l[0].value() * l[1].value() * l[2].value() - 1.0) < 1e-12);
    CHECK(std::abs(l[0].value() + l[1].value() + l[2].value() - (3.0 + g * g)) <
          1e-10 * std::max(1.0, g * g));
  }
}

TEST_CASE("simple shear eigenvalue derivatives against finite differences") {
  for (double g : {0.3, 1.0, 4.0}) {
    const auto l = simple_shear_eigenvalues(Jet2::variable(g, 0, 1));
    const double h = 1e-4;
    auto lp = [](double x) { return (2 + x * x + x * std::sqrt(4 + x * x)) / 2; };
    CHECK(l[0].d(0) == Approx((lp(g + h) - lp(g - h)) / (2 * h)).epsilon(1e-7));
    CHECK(l[0].d2(0, 0) ==
          Approx((lp(g + h) - 2 * lp(g) + lp(g - h)) / (h * h)).epsilon(1e-5));
  }
}

TEST_CASE("APS+ gradient") {
  CHECK(aps_plus_gradient(0, 0, 0) == Matrix3::identity());
  CHECK(aps_plus_gradient(0.3, -0.7, 0.0) == aps_deformation_gradient({0.3, -0.7}));
  CHECK(aps_plus_gradient(1, 2, 0.5).det() == Approx(1.5));
  CHECK_THROWS_AS(aps_plus_gradient(0, 0, -1.0), DomainError);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int t = 0; t < 100; ++t) {
    const double u1 = u(rng), u2 = u(rng), u3 = std::abs(u(rng)) - 0.9;
    const Matrix3 f = aps_plus_gradient(u1, u2, u3);
    CHECK(std::abs(f.det() - (1 + u3)) < 1e-12);
    // Closed-form cofactor of [[1,0,0],[0,1,0],[u1,u2,1+u3]].
    const Matrix3 c = f.cofactor();
    const double expect[3][3] = {{1 + u3, 0, -u1}, {0, 1 + u3, -u2}, {0, 0, 1}};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(std::abs(c(i, j) - expect[i][j]) < 1e-12);
  }
}

TEST_CASE("matrix helpers") {
  Matrix3 a;
  a.m = {{{2, 1, 0}, {0, 3, 1}, {1, 0, 1}}};
  CHECK(a.det() == Approx(7.0));
  CHECK(a.trace() == 6.0);
  const Matrix3 p = a * a.inverse();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(p(i, j) == Approx(i == j ? 1.0 : 0.0));
  Matrix3 singular;
  singular.m = {{{1, 2, 3}, {2, 4, 6}, {0, 0, 1}}};
  CHECK_THROWS_AS(singular.inverse(), DomainError);
  const Matrix3 c = singular.cofactor();
  CHECK(std::isfinite(c(0, 0)));
  CHECK(a.frobenius_sq() == Approx(17.0));
}
