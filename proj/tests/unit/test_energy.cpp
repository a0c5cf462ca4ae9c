#include <doctest.h>

#include <cmath>
#include <set>

#include "apsc/catalog.hpp"
#include "apsc/error.hpp"
#include "apsc/kinematics.hpp"

using namespace apsc;
using doctest::Approx;

TEST_CASE("catalog shape") {
  const auto c = catalog();
  REQUIRE(c.size() == 14);
  std::set<std::string> names;
  for (const auto& e : c) names.insert(e.model.name());
  CHECK(names.size() == 14);
  for (const char* n : {"neo-hooke", "mooney-rivlin", "blatz-ko", "veronda-westman", "mihai-neff",
                        "knowles", "bazant", "ciarlet", "svk", "fourth-order", "hencky",
                        "exp-hencky", "martin-neff", "model"})
    CHECK(names.count(n) == 1);
  CHECK(find_model("pucci").name() == "pucci");
  CHECK_THROWS_AS(find_model("nope"), std::invalid_argument);
  CHECK(model_names().size() >= 15);
}

TEST_CASE("expected verdict metadata") {
  const auto bk = catalog_entry("blatz-ko");
  CHECK(bk.expected.k2(bk.model.params()) == Expect::Yes);
  const auto mr = catalog_entry("mooney-rivlin");
  CHECK(*mr.expected.k1_b({{"alpha", 0.3}, {"mu", 1}, {"kappa", 1}}) == Approx(0.7));
  CHECK_FALSE(catalog_entry("hencky").expected.aps_convex);
  CHECK(catalog_entry("svk").expected.k2({}) == Expect::NotApplicable);
}

TEST_CASE("defaults") {
  const auto mr = find_model("mooney-rivlin");
  CHECK(mr.param("mu") == 1.0);
  CHECK(mr.param("alpha") == 0.5);
  CHECK(mr.param("kappa") == 1.0);
  CHECK(find_model("veronda-westman").param("gamma") == 1.0);
  CHECK(find_model("knowles").param("b") == 1.0);
  CHECK(find_model("knowles").param("n") == 1.0);
  CHECK(find_model("fourth-order").param("A") == 1.0);
  CHECK(find_model("exp-hencky").param("k_hat") == 1.0);
  CHECK(find_model("neo-hooke").volumetric().find("kappa/2") != std::string::npos);
}

TEST_CASE("every catalog energy vanishes at the reference state") {
  for (const auto& e : catalog()) {
    CAPTURE(e.model.name());
    if (e.model.has_invariant_form()) CHECK(std::abs(e.model.invariant({3, 3, 1})) < 1e-12);
    CHECK(std::abs(e.model.spectral(std::array<double, 3>{1, 1, 1})) < 1e-12);
    CHECK(std::abs(e.model.evaluate(Matrix3::identity())) < 1e-12);
  }
}

TEST_CASE("invariant and eigenvalue channels agree along simple shear") {
  for (const auto& e : catalog()) {
    CAPTURE(e.model.name());
    for (int k = 0; k <= 100; ++k) {
      const double g = 0.1 * k;
      const double a = e.model.shear_path(Jet2(g)).value();
      const double b = e.model.shear_path_spectral(Jet2(g)).value();
      CHECK(std::abs(a - b) < 1e-10 * std::max(1.0, std::abs(a)));
    }
  }
}

TEST_CASE("SVK at gamma = 1 against the matrix oracle") {
  // C for APS gamma = 1: [[2,0,1],[0,1,0],[1,0,1]]; |C - I|^2 = 1 + 1 + 1 = 3.
  const Matrix3 f = aps_deformation_gradient({1.0, 0.0});
  const Matrix3 c = f.transpose() * f;
  double frob = 0.0, tr = 0.0;
  for (int i = 0; i < 3; ++i) {
    tr += c(i, i) - 1.0;
    for (int j = 0; j < 3; ++j) frob += std::pow(c(i, j) - (i == j), 2);
  }
  CHECK(frob == Approx(3.0));
  const auto svk = find_model("svk");
  const double mu = svk.param("mu"), lambda = svk.param("lambda");
  CHECK(svk.invariant({4, 4, 1}) == Approx(mu / 4 * frob + lambda / 8 * tr * tr));
  CHECK(svk.evaluate(f) == Approx(mu / 4 * frob + lambda / 8 * tr * tr));
}

TEST_CASE("spectral models at the identity") {
  CHECK(find_model("bazant").shear_path(Jet2(0.0)).value() == Approx(0.0));
  CHECK(find_model("hencky").shear_path(Jet2(0.0)).value() == Approx(0.0));
  CHECK(find_model("bazant").has_native_spectral_form());
}

TEST_CASE("TC-symmetric rows are invariant under eigenvalue inversion") {
  for (const char* n : {"bazant", "hencky", "exp-hencky", "martin-neff", "model"}) {
    const auto m = find_model(n);
    CAPTURE(n);
    for (double g : {0.2, 1.0, 3.0, 7.0}) {
      const auto l = simple_shear_eigenvalues(Jet2(g));
      const std::array<double, 3> a{l[0].value(), l[1].value(), 1.0};
      const std::array<double, 3> b{1.0 / a[0], 1.0 / a[1], 1.0};
      CHECK(m.spectral(a) == Approx(m.spectral(b)).epsilon(1e-10));
    }
  }
}

TEST_CASE("pucci energy") {
  const auto p = pucci_energy(1.0, 0.95);
  CHECK(std::abs(p.invariant({3, 3, 1})) < 1e-15);
  // Closed form of the energy, evaluated directly.
  const double mu = 1.0, a = 0.95, i1 = 5.5, i2 = 4.0, i3 = 1.3;
  const double w = 0.75 * mu * a * (std::log(i1) + std::log(i2) - std::log(i3) - 2 * std::log(3.0)) +
                   0.5 * mu * (1 - a) * (i1 + 2 / std::sqrt(i3) - 5);
  CHECK(p.invariant({i1, i2, i3}) == Approx(w));
  CHECK_THROWS_AS(pucci_energy(-1.0, 0.5), DomainError);
  CHECK_THROWS_AS(pucci_energy(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(pucci_energy(1.0, 0.0), DomainError);
}

TEST_CASE("with_param, scaled and validators") {
  const auto mr = find_model("mooney-rivlin").with_param("alpha", 0.3);
  CHECK(mr.param("alpha") == 0.3);
  CHECK_THROWS_AS(mr.with_param("nope", 1.0), std::invalid_argument);
  CHECK_THROWS_AS(find_model("neo-hooke").with_param("mu", -1.0), DomainError);
  const auto s = find_model("blatz-ko").scaled(3.0);
  CHECK(s.invariant({5, 4, 1.2}) == Approx(3.0 * find_model("blatz-ko").invariant({5, 4, 1.2})));
}

TEST_CASE("DSL energies") {
  const auto d = make_dsl_energy("mu/2*(I1-3)", {{"mu", 2.0}});
  CHECK(d.invariant({4, 4, 1}) == Approx(1.0));
  CHECK(d.compressible());
  CHECK_THROWS_AS(make_dsl_energy("mu*(I1-3)", {}), std::invalid_argument);
  const auto inc = make_dsl_energy("I1-3", {}, Compressibility::IncompressibleOnly);
  CHECK_FALSE(inc.compressible());
}

TEST_CASE("quasi-incompressible penalty") {
  const auto mr = find_model("mooney-rivlin");
  const auto qi = quasi_incompressible(mr);
  CHECK(qi.name() == "mooney-rivlin+qi");
  CHECK(qi.param("kappa") == Approx(1e4));
  // zero on isochoric states, so APS fields see no penalty
  for (double g : {0.0, 0.5, 2.0}) {
    const double i = 3 + g * g;
    CHECK(qi.invariant({i, i, 1.0}) == Approx(mr.invariant({i, i, 1.0})));
  }
  // d2/dI3^2 of kappa/2 (sqrt(I3) - 1)^2 at I3 = 1 is kappa/4
  const Jet2 wq = qi.invariant_jet({3, 3, 1});
  const Jet2 w0 = mr.with_param("kappa", 0.0).invariant_jet({3, 3, 1});
  CHECK(wq.d2(2, 2) - w0.d2(2, 2) == Approx(1e4 / 4));

  const auto bk = quasi_incompressible(find_model("blatz-ko"), 1e5);
  const Jet2 wb = bk.invariant_jet({3, 3, 1});
  const Jet2 wb0 = find_model("blatz-ko").invariant_jet({3, 3, 1});
  CHECK(wb.d2(2, 2) - wb0.d2(2, 2) == Approx(1e5 / 4));
}
