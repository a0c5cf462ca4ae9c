#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "apsc/catalog.hpp"
#include "apsc/conditions.hpp"
#include "apsc/error.hpp"
#include "apsc/finite_diff.hpp"
#include "random_energy.hpp"

using namespace apsc;
using doctest::Approx;

namespace {

const RGrid& grid() {
  static const RGrid g = default_grid();
  return g;
}

/// d^2/dR^2 of the counterexample energy along the shear path, by hand.
double pucci_second(double mu, double alpha, double r) {
  const double i = 3 + r * r;
  return mu * (3 * alpha * (3 - r * r) / (i * i) + (1 - alpha));
}

/// W(3+R^2, 3+R^2, 1) as a plain function of R.
double path_value(const EnergyModel& m, double r) {
  const double i = 3 + r * r;
  return m.invariant({i, i, 1.0});
}

/// The K2 combination from central differences of plain evaluations only.
double k2_by_differences(const EnergyModel& m, double i) {
  const double h = 1e-4 * i;
  auto w = [&](double a, double b, double c) { return m.invariant({a, b, c}); };
  auto d2 = [&](int p, int q) {
    double x[3] = {i, i, 1.0};
    const double hp = p == 2 ? 1e-4 : h, hq = q == 2 ? 1e-4 : h;
    auto at = [&](double sp, double sq) {
      double y[3] = {x[0], x[1], x[2]};
      y[p] += sp * hp;
      y[q] += sq * hq;
      return w(y[0], y[1], y[2]);
    };
    if (p == q) return (at(1, 0) - 2 * w(x[0], x[1], x[2]) + at(-1, 0)) / (hp * hp);
    return (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4 * hp * hq);
  };
  const double w2 = (w(i, i + h, 1) - w(i, i - h, 1)) / (2 * h);
  return d2(0, 0) + i * d2(0, 1) + d2(0, 2) + (i - 1) * d2(1, 1) + d2(1, 2) + 0.5 * w2;
}

}  // namespace

TEST_CASE("APS2 along Neo-Hooke is the constant mu") {
  const auto nh = find_model("neo-hooke").with_param("mu", 2.5);
  for (double r : {0.01, 0.5, 3.0, 9.0}) {
    CHECK(aps2_quantity(nh, r) == Approx(2.5));
    CHECK(fd_second_derivative([&](double x) { return path_value(nh, x); }, r) ==
          Approx(2.5).epsilon(1e-6));
  }
  CHECK(check_aps2(nh, grid()).passed());
}

TEST_CASE("APS2 counterexample witness near R = 3") {
  const auto p = pucci_energy(1.0, 0.95);
  const Verdict v = check_aps2(p, grid());
  REQUIRE(v.failed());
  REQUIRE(v.witness);
  CHECK(*v.witness >= 2.5);
  CHECK(*v.witness <= 3.5);
  // samples are judged relative to max(1, |W|)
  double lowest = 1e300, at = 0;
  for (std::size_t i = 0; i < grid().size(); ++i) {
    const double r = grid()[i];
    const double rel = pucci_second(1.0, 0.95, r) / std::max(1.0, std::abs(path_value(p, r)));
    if (rel < lowest) lowest = rel, at = r;
  }
  CHECK(*v.witness == at);
  CHECK(*v.value == Approx(pucci_second(1.0, 0.95, at)).epsilon(1e-10));
  for (double r : {0.3, 2.0, 3.0, 6.0})
    CHECK(aps2_quantity(p, r) == Approx(pucci_second(1.0, 0.95, r)).epsilon(1e-12));
  CHECK(check_aps2(find_model("hencky"), grid()).failed());
}

TEST_CASE("APS1 is one-way") {
  CHECK(check_aps1(find_model("neo-hooke"), grid()).passed());
  // log I1 + log I2 terms make the restricted energy concave while APS2 holds.
  const auto p = pucci_energy(1.0, 0.5);
  CHECK(check_aps1(p, grid()).failed());
  CHECK(check_aps2(p, grid()).passed());
  const ConditionReport r = run_all_checks(p);
  CHECK(r.find("APS1")->status == Status::Inconclusive);
  CHECK(r.find("APS1")->detail.find("inconclusive") != std::string::npos);
}

TEST_CASE("APS3 bracket for Mooney-Rivlin and Fosdick for Blatz-Ko") {
  const auto mr = find_model("mooney-rivlin").with_param("alpha", 0.3);
  const Verdict a3 = check_aps3(mr, grid());
  CHECK(a3.passed());
  for (double s : a3.samples) CHECK(s == Approx(0.5));
  const auto bk = find_model("blatz-ko");
  const Verdict f = fosdick_check(bk, grid(), check_aps3(bk, grid()));
  CHECK(f.passed());
  for (double s : f.samples) CHECK(s == Approx(0.5));
  const auto ci = find_model("ciarlet");
  CHECK(fosdick_check(ci, grid(), check_aps3(ci, grid())).passed());
  const Verdict skipped = fosdick_check(find_model("hencky"), grid(),
                                        check_aps3(find_model("hencky"), grid()));
  CHECK(skipped.status == Status::NotApplicable);
}

TEST_CASE("K1 constants") {
  CHECK(*check_k1(find_model("neo-hooke"), grid()).fitted == Approx(0.0));
  CHECK(*check_k1(find_model("mooney-rivlin").with_param("alpha", 0.3), grid()).fitted ==
        Approx(0.7));
  const Verdict vw = check_k1(find_model("veronda-westman"), grid());
  CHECK(vw.failed());
  CHECK(vw.witness);
  for (const char* n : {"mooney-rivlin", "ciarlet", "martin-neff"}) {
    const auto m = find_model(n);
    const double b = *check_k1(m, grid()).fitted;
    for (double c : {0.5, 2.0, 10.0})
      CHECK(std::abs(*check_k1(m.scaled(c), grid()).fitted - b) < 1e-12);
  }
}

TEST_CASE("K2 verdicts") {
  const Verdict bk = check_k2(find_model("blatz-ko"), grid());
  CHECK(bk.passed());
  for (double s : bk.samples) CHECK(s == 0.0);
  const auto mn = find_model("mihai-neff");
  CHECK(check_k2(mn, grid()).passed());
  CHECK(check_k2(mn.with_param("mu_tilde", 0.5), grid()).failed());
  CHECK(check_k2(find_model("ciarlet"), grid()).failed());
  CHECK(check_k2(find_model("ciarlet").with_param("c2", 0.0), grid()).passed());
  CHECK(check_k2(find_model("svk"), grid()).status == Status::NotApplicable);
}

TEST_CASE("K2 residual of single-invariant energies against difference quotients") {
  const auto i1 = make_dsl_energy("I1", {});
  const auto i2 = make_dsl_energy("I2", {});
  for (double i : {3.5, 7.0, 20.0}) {
    CHECK(k2_residual(i1, i) == 0.0);
    CHECK(k2_residual(i2, i) == Approx(0.5));
    CHECK(k2_by_differences(i2, i) == Approx(0.5).epsilon(1e-5));
  }
  const auto mixed =
      make_dsl_energy("I1^2*I2/10 + log(I3)*I1 + sqrt(I2)*I3^2 - exp(I1/20)*I2", {});
  for (double i : {3.2, 5.0, 12.0})
    CHECK(k2_residual(mixed, i) == Approx(k2_by_differences(mixed, i)).epsilon(1e-5));
}

TEST_CASE("K2 probe agrees with the direct residual") {
  const auto bk = k2_probe_at(find_model("blatz-ko"), 1.3);
  CHECK(bk.direct == 0.0);
  CHECK(bk.via_q == Approx(0.0).scale(1.0));
  for (double r : {0.1, 1.0, 4.0}) {
    const auto mr = k2_probe_at(find_model("mooney-rivlin"), r);
    CHECK(std::abs(mr.via_q - 2 * mr.direct) < 1e-9);
    const auto d = k2_probe_at(make_dsl_energy("I1^2 + I2", {}), r);
    CHECK(std::abs(d.via_q - 2 * d.direct) < 1e-8 * std::max(1.0, std::abs(d.direct)));
  }
  CHECK(k2_equivalence_probe(make_dsl_energy("I1^2 + I2", {}), grid()).passed());
}

TEST_CASE("empirical inequalities") {
  const auto p = pucci_energy(1.0, 0.95);
  CHECK(empirical_on_path(p, grid()).passed());
  const Empirical nh = empirical_inequalities(find_model("neo-hooke"), {3, 3, 1});
  CHECK(nh.beta_m1 == 0.0);
  for (double i : {3.0, 4.0, 12.0}) {
    const Empirical e = empirical_inequalities(p, {i, i, 1.0});
    CHECK(e.beta_m1 == Approx(-1.5 * 0.95 / i));
    // the first coefficient comes out negative
    CHECK(e.beta0 < 0.0);
    CHECK(e.pass);
  }
  const Empirical inc = empirical_inequalities(find_model("svk"), {4, 4, 1});
  CHECK_FALSE(inc.beta0_applicable);
  CHECK_THROWS_AS(empirical_inequalities(p, {3, 3, -1.0}), DomainError);
}

TEST_CASE("reference state") {
  for (double mu : {0.5, 1.0, 4.0}) {
    const ReferenceState r = reference_state(pucci_energy(mu, 0.95));
    CHECK(std::abs(r.residual_stress) < 1e-12);
    CHECK(r.shear_modulus == Approx(mu).epsilon(1e-12));
  }
  CHECK(std::abs(reference_state(find_model("blatz-ko")).residual_stress) < 1e-15);
  const ConditionReport ci = run_all_checks(find_model("ciarlet"));
  CHECK(ci.find("reference")->status == Status::Inconclusive);
  CHECK(*ci.find("reference")->value == Approx(1.5));
}

TEST_CASE("Cauchy shear stress") {
  for (const auto& e : catalog()) CHECK(cauchy_shear_stress(e.model, 0.0) == 0.0);
  const auto mr = find_model("mooney-rivlin").with_param("mu", 3.0);
  for (double g : {0.1, 1.0, 5.0}) {
    CHECK(cauchy_shear_stress(mr, g) == Approx(3.0 * g));
    const auto w = [&](double x) { return path_value(mr, x); };
    CHECK(cauchy_shear_stress(mr, g) == Approx(fd_first_derivative(w, g)).epsilon(1e-8));
  }
}

TEST_CASE("local shear monotonicity") {
  CHECK(local_shear_monotonicity(pucci_energy(1.0, 0.95)).passed());
  const auto h = find_model("hencky");
  const Verdict v = local_shear_monotonicity(h);
  CHECK(v.passed());
  const double fd = cauchy_shear_stress(h, 1e-4) / 1e-4;
  CHECK(*v.value == Approx(fd).epsilon(1e-6));
  CHECK(*v.value == Approx(h.param("mu")).epsilon(1e-8));
  const Verdict neg = local_shear_monotonicity(make_dsl_energy("-(I1-3)/2", {}));
  CHECK(neg.failed());
  CHECK(*neg.value == Approx(-1.0));
}

TEST_CASE("h* probe") {
  CHECK(pucci_hstar_probe(pucci_energy(1.0, 0.95), grid()).failed());
  CHECK(pucci_hstar_probe(pucci_energy(1.0, 0.5), grid()).passed());
}

TEST_CASE("verdict equivalence across the catalog and random energies") {
  std::vector<EnergyModel> models;
  for (const auto& e : catalog()) models.push_back(e.model);
  models.push_back(pucci_energy(1.0, 0.95));
  for (auto& m : testing::random_energies(20, 99)) models.push_back(m);
  int failing = 0;
  for (const auto& m : models) {
    CAPTURE(m.name());
    const Verdict a2 = check_aps2(m, grid());
    const Verdict a3 = check_aps3(m, grid());
    const Verdict sm = shear_monotonicity(m, grid());
    const Verdict hp = pucci_hstar_probe(m, grid());
    CHECK(a2.status == a3.status);
    CHECK(a2.status == sm.status);
    CHECK(a2.status == hp.status);
    if (a2.failed()) {
      ++failing;
      for (const Verdict* v : {&a3, &sm, &hp}) {
        REQUIRE(v->witness_index);
        const auto lo = std::min(*a2.witness_index, *v->witness_index);
        const auto hi = std::max(*a2.witness_index, *v->witness_index);
        // same sign change: every sample between the two witnesses fails too
        for (auto k = lo; k <= hi; ++k) CHECK(a2.samples[k] < 0.0);
      }
    }
    if (check_aps1(m, grid()).passed()) CHECK(a2.passed());
  }
  CHECK(failing >= 2);
}

TEST_CASE("APS+ convexity") {
  CHECK(aps_plus_convexity(find_model("ciarlet")).passed());
  CHECK(aps_plus_convexity(find_model("neo-hooke")).passed());
  CHECK(aps_plus_convexity(find_model("hencky")).failed());
  CHECK(aps_plus_convexity(pucci_energy(1.0, 0.95)).failed());
  const Verdict svk = aps_plus_convexity(find_model("svk"));
  CHECK(svk.status != Status::NotApplicable);

  ApsPlusOptions o;
  o.seed = 5;
  const Verdict a = aps_plus_convexity(find_model("exp-hencky"), o);
  const Verdict b = aps_plus_convexity(find_model("exp-hencky"), o);
  CHECK(a.status == b.status);
  CHECK(a.detail == b.detail);

  for (const auto& e : catalog()) {
    CAPTURE(e.model.name());
    if (aps_plus_convexity(e.model).passed()) CHECK(check_aps2(e.model, grid()).passed());
  }
}

TEST_CASE("tension-compression symmetry") {
  const Verdict mn = tc_symmetry(find_model("martin-neff"), grid());
  CHECK(mn.passed());
  CHECK(*mn.fitted == Approx(0.5));
  CHECK(tc_symmetry(find_model("bazant"), grid()).passed());
  const Verdict nh = tc_symmetry(find_model("neo-hooke"), grid());
  CHECK(nh.status == Status::NotApplicable);
  CHECK(nh.witness);
  CHECK(*check_k1(find_model("neo-hooke"), grid()).fitted == Approx(0.0));
}

TEST_CASE("alpha threshold") {
  const double a = alpha_threshold_bisect(1.0);
  CHECK(a >= 0.8888);
  CHECK(a <= 0.8890);
  CHECK(std::abs(alpha_threshold_bisect(7.0) - a) < 1e-6);
  CHECK(std::abs(aps2_quantity(pucci_energy(1.0, 8.0 / 9.0), 3.0)) < 1e-14);
  CHECK_THROWS_AS(alpha_threshold_bisect(-1.0), DomainError);
}

TEST_CASE("domain errors become not-applicable verdicts") {
  const auto bad = make_dsl_energy("log(I1-4)", {});
  const Verdict v = check_aps2(bad, grid());
  CHECK(v.status == Status::NotApplicable);
  CHECK_FALSE(v.detail.empty());
  const ConditionReport r = run_all_checks(bad);
  for (const auto& x : r.verdicts) CHECK(x.status != Status::Pass);
}

TEST_CASE("every failing verdict names a witness") {
  for (const auto& e : catalog()) {
    const ConditionReport r = run_all_checks(e.model);
    for (const auto& v : r.verdicts) {
      CAPTURE(e.model.name());
      CAPTURE(v.condition);
      if (!v.failed()) continue;
      CHECK(v.witness.has_value());
      CHECK_FALSE(v.witness_kind.empty());
    }
  }
}
