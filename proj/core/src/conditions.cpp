#include "apsc/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <stdexcept>

#include "apsc/bisect.hpp"
#include "apsc/catalog.hpp"
#include "apsc/error.hpp"
#include "apsc/spectral.hpp"

namespace apsc {

namespace {

double scale_of(double w) { return std::max(1.0, std::abs(w)); }

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Runs `body`; evaluation failures become a not-applicable verdict.
Verdict guarded(const std::string& name, const std::function<Verdict()>& body) {
  try {
    return body();
  } catch (const DomainError& e) {
    Verdict v;
    v.condition = name;
    v.status = Status::NotApplicable;
    v.detail = std::string("evaluation failed: ") + e.what();
    return v;
  } catch (const std::logic_error& e) {
    Verdict v;
    v.condition = name;
    v.status = Status::NotApplicable;
    v.detail = e.what();
    return v;
  }
}

Verdict not_applicable(const std::string& name, const std::string& why) {
  Verdict v;
  v.condition = name;
  v.status = Status::NotApplicable;
  v.detail = why;
  return v;
}

// Pass iff q(R) >= -factor * tol * scale(R) at every grid point. A failure
// reports the sample with the most negative q / scale.
Verdict sign_check(const std::string& name, const RGrid& grid, double tol, double factor,
                   const std::string& kind,
                   const std::function<std::pair<double, double>(double)>& q_and_scale) {
  Verdict v;
  v.condition = name;
  v.witness_kind = kind;
  v.samples.reserve(grid.size());
  double worst = 0.0;
  std::optional<std::size_t> worst_i;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto [q, s] = q_and_scale(grid[i]);
    v.samples.push_back(q);
    if (q < -factor * tol * s) {
      const double rel = q / s;
      if (!worst_i || rel < worst) {
        worst = rel;
        worst_i = i;
      }
    }
  }
  if (worst_i) {
    v.status = Status::Fail;
    v.witness_index = worst_i;
    v.witness = grid[*worst_i];
    v.value = v.samples[*worst_i];
    v.detail = "most negative sample at " + kind + fmt(" = %.6g", grid[*worst_i]);
  } else {
    v.status = Status::Pass;
    const auto it = std::min_element(v.samples.begin(), v.samples.end());
    if (it != v.samples.end()) v.value = *it;
  }
  return v;
}

void require_invariant(const EnergyModel& m) {
  if (!m.has_invariant_form())
    throw std::logic_error("model '" + m.name() + "' has no invariant form");
}

Jet2 path_jet_r(const EnergyModel& m, double r) { return m.shear_path(Jet2::variable(r, 0, 1)); }

}  // namespace

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::NotApplicable: return "n.a.";
    case Status::Inconclusive: return "inconclusive";
  }
  return "?";
}

double PathSample::scale() const { return scale_of(partials.value()); }

PathSample path_sample(const EnergyModel& m, double r) {
  require_invariant(m);
  PathSample s;
  s.r = r;
  s.w = path_jet_r(m, r);
  const double i = 3.0 + r * r;
  s.partials = m.invariant_jet({i, i, 1.0});
  return s;
}

double aps2_quantity(const EnergyModel& m, double r) { return path_jet_r(m, r).d2(0, 0); }

Verdict check_aps2(const EnergyModel& m, const RGrid& grid, double tol) {
  return guarded("APS2", [&] {
    return sign_check("APS2", grid, tol, 1.0, "R", [&](double r) {
      const Jet2 w = path_jet_r(m, r);
      return std::make_pair(w.d2(0, 0), scale_of(w.value()));
    });
  });
}

Verdict check_aps1(const EnergyModel& m, const RGrid& grid, double tol) {
  return guarded("APS1", [&] {
    require_invariant(m);
    return sign_check("APS1", grid, tol, 1.0, "R", [&](double r) {
      const PathSample s = path_sample(m, r);
      return std::make_pair(s.h(0, 0) + 2.0 * s.h(0, 1) + s.h(1, 1), s.scale());
    });
  });
}

Verdict check_aps3(const EnergyModel& m, const RGrid& grid, double tol) {
  // d/dR [R (W1 + W2)] is half of d^2W/dR^2.
  return guarded("APS3", [&] {
    require_invariant(m);
    return sign_check("APS3", grid, tol, 0.5, "R", [&](double r) {
      const PathSample s = path_sample(m, r);
      const double q = s.w1() + s.w2() + 2.0 * r * r * (s.h(0, 0) + 2.0 * s.h(0, 1) + s.h(1, 1));
      return std::make_pair(q, s.scale());
    });
  });
}

Verdict fosdick_check(const EnergyModel& m, const RGrid& grid, const Verdict& aps3) {
  if (aps3.status != Status::Pass) return not_applicable("Fosdick", "requires APS3 to pass");
  return guarded("Fosdick", [&] {
    Verdict v;
    v.condition = "Fosdick";
    v.witness_kind = "R";
    v.status = Status::Pass;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const PathSample s = path_sample(m, grid[i]);
      const double d = s.w1() + s.w2();
      v.samples.push_back(d);
      if (!(d > 0.0) && v.status == Status::Pass) {
        v.status = Status::Fail;
        v.witness = grid[i];
        v.witness_index = i;
        v.value = d;
        v.detail = "inconsistency: APS3 holds but W1 + W2 <= 0";
      }
    }
    if (v.passed()) v.value = *std::min_element(v.samples.begin(), v.samples.end());
    return v;
  });
}

Verdict check_k1(const EnergyModel& m, const RGrid& grid, double spread_tol) {
  return guarded("K1", [&]() -> Verdict {
    require_invariant(m);
    Verdict v;
    v.condition = "K1";
    v.witness_kind = "R";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const PathSample s = path_sample(m, grid[i]);
      const double den = s.w1() + s.w2();
      if (std::abs(den) <= 1e-14 * std::max(1.0, std::abs(s.w1()) + std::abs(s.w2())))
        return not_applicable("K1", "W1 + W2 vanishes at R = " + fmt("%.6g", grid[i]));
      v.samples.push_back(s.w2() / den);
    }
    std::vector<double> sorted = v.samples;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    double spread = 0.0;
    std::size_t at = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = std::abs(v.samples[i] - median);
      if (d > spread) {
        spread = d;
        at = i;
      }
    }
    v.extras.emplace_back("spread", spread);
    if (spread < spread_tol) {
      v.status = Status::Pass;
      v.fitted = median;
      v.value = median;
      v.detail = "b = " + fmt("%.12g", median);
    } else {
      v.status = Status::Fail;
      v.witness = grid[at];
      v.witness_index = at;
      v.value = spread;
      v.detail = "b(R) not constant, spread " + fmt("%.3g", spread);
    }
    return v;
  });
}

double k2_residual(const EnergyModel& m, double i) {
  require_invariant(m);
  const Jet2 w = m.invariant_jet({i, i, 1.0});
  return w.d2(0, 0) + i * w.d2(0, 1) + w.d2(0, 2) + (i - 1.0) * w.d2(1, 1) + w.d2(1, 2) +
         0.5 * w.d(1);
}

Verdict check_k2(const EnergyModel& m, const RGrid& grid, double tol) {
  if (!m.compressible()) return not_applicable("K2", "incompressible-only model");
  return guarded("K2", [&] {
    require_invariant(m);
    Verdict v;
    v.condition = "K2";
    v.witness_kind = "R";
    v.status = Status::Pass;
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double r = grid[i];
      const double inv = 3.0 + r * r;
      const double res = k2_residual(m, inv);
      const double s = scale_of(m.invariant({inv, inv, 1.0}));
      v.samples.push_back(res);
      if (std::abs(res) >= tol * s && std::abs(res) / s > worst) {
        worst = std::abs(res) / s;
        v.status = Status::Fail;
        v.witness = r;
        v.witness_index = i;
        v.value = res;
      }
    }
    if (v.passed()) {
      double mx = 0.0;
      for (double x : v.samples) mx = std::max(mx, std::abs(x));
      v.value = mx;
      v.detail = "max |residual| " + fmt("%.3g", mx);
    } else {
      v.detail = "residual " + fmt("%.6g", *v.value) + " at R = " + fmt("%.6g", *v.witness);
    }
    return v;
  });
}

K2Probe k2_probe_at(const EnergyModel& m, double r) {
  require_invariant(m);
  const double i = 3.0 + r * r;
  // Seed (x, y): the path moves with x, y perturbs invariant k only, so
  // d2/dxdy gives d/dx of the k-th partial along the path.
  double dw[3];
  double w[3];
  for (int k = 0; k < 3; ++k) {
    const Jet2 x = Jet2::variable(0.0, 0, 2);
    const Jet2 y = Jet2::variable(0.0, 1, 2);
    const Jet2 zero = Jet2::constant(0.0, 2);
    const Jet2 i1 = i + x + (k == 0 ? y : zero);
    const Jet2 i2 = i + x + (k == 1 ? y : zero);
    const Jet2 i3 = 1.0 + (k == 2 ? y : zero);
    const Jet2 f = m.invariant(i1, i2, i3);
    w[k] = f.d(1);
    dw[k] = f.d2(0, 1);
  }
  K2Probe p;
  const double q_prime = 2.0 * dw[2] + 2.0 * dw[0] + 2.0 * w[1] + 2.0 * (i - 1.0) * dw[1];
  p.via_q = q_prime - w[1];
  p.direct = k2_residual(m, i);
  return p;
}

Verdict k2_equivalence_probe(const EnergyModel& m, const RGrid& grid, double tol) {
  if (!m.compressible()) return not_applicable("K2-probe", "incompressible-only model");
  return guarded("K2-probe", [&] {
    Verdict v;
    v.condition = "K2-probe";
    v.witness_kind = "R";
    v.status = Status::Pass;
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double r = grid[i];
      const K2Probe p = k2_probe_at(m, r);
      const double inv = 3.0 + r * r;
      const double s = scale_of(m.invariant({inv, inv, 1.0}));
      const double gap = std::abs(p.via_q - 2.0 * p.direct);
      v.samples.push_back(gap);
      if (gap / s > worst) worst = gap / s;
      if (gap >= tol * s && v.status == Status::Pass) {
        v.status = Status::Fail;
        v.witness = r;
        v.witness_index = i;
        v.value = gap;
      }
    }
    v.extras.emplace_back("max_relative_gap", worst);
    v.detail = "q~' - W2 vs 2 x residual, max relative gap " + fmt("%.3g", worst);
    return v;
  });
}

Empirical empirical_inequalities(const EnergyModel& m, const InvariantTriple& t, double tol) {
  require_invariant(m);
  if (!(t.i3 > 0.0)) throw DomainError("empirical_inequalities", "I3 must be positive");
  const Jet2 w = m.invariant_jet(t);
  const double rt = std::sqrt(t.i3);
  Empirical e;
  e.beta0_applicable = m.compressible();
  e.beta0 = 2.0 / rt * (t.i2 * w.d(1) + t.i3 * w.d(2));
  e.beta1 = 2.0 / rt * w.d(0);
  e.beta_m1 = -2.0 * rt * w.d(1);
  e.pass = (!e.beta0_applicable || e.beta0 <= tol) && e.beta1 > 0.0 && e.beta_m1 <= tol;
  return e;
}

Verdict empirical_on_path(const EnergyModel& m, const RGrid& grid, double tol) {
  return guarded("empirical", [&] {
    Verdict v;
    v.condition = "empirical";
    v.witness_kind = "R";
    v.status = Status::Pass;
    auto probe = [&](double r, std::optional<std::size_t> idx) {
      const double i = 3.0 + r * r;
      const Empirical e = empirical_inequalities(m, {i, i, 1.0}, tol);
      if (!e.pass && v.status == Status::Pass) {
        v.status = Status::Fail;
        v.witness = r;
        v.witness_index = idx;
        v.detail = "beta0 = " + fmt("%.6g", e.beta0) + ", beta1 = " + fmt("%.6g", e.beta1) +
                   ", beta-1 = " + fmt("%.6g", e.beta_m1);
      }
      return e;
    };
    const Empirical ref = probe(0.0, std::nullopt);
    for (std::size_t i = 0; i < grid.size(); ++i) probe(grid[i], i);
    v.extras = {{"beta0_ref", ref.beta0}, {"beta1_ref", ref.beta1}, {"beta-1_ref", ref.beta_m1}};
    if (!ref.beta0_applicable) v.extras.emplace_back("beta0_applicable", 0.0);
    if (v.passed())
      v.detail = m.compressible() ? "beta0 <= 0, beta1 > 0, beta-1 <= 0 at all samples"
                                  : "beta1 > 0, beta-1 <= 0 at all samples (beta0 n.a.)";
    return v;
  });
}

ReferenceState reference_state(const EnergyModel& m) {
  require_invariant(m);
  const Jet2 w = m.invariant_jet({3.0, 3.0, 1.0});
  return {w.d(0) + 2.0 * w.d(1) + w.d(2), 2.0 * w.d(0) + 2.0 * w.d(1)};
}

double cauchy_shear_stress(const EnergyModel& m, double gamma) {
  require_invariant(m);
  const double i = 3.0 + gamma * gamma;
  const Jet2 w = m.invariant_jet({i, i, 1.0});
  const double rt = 1.0;  // sqrt(I3) on the path
  return (2.0 / rt * w.d(0) + 2.0 * rt * w.d(1)) * gamma;
}

double cauchy_shear_slope(const EnergyModel& m, double gamma) {
  require_invariant(m);
  const double i = 3.0 + gamma * gamma;
  const Jet2 w = m.invariant_jet({i, i, 1.0});
  const double h_star = 2.0 * (w.d(0) + w.d(1));
  const double dh = 2.0 * (w.d2(0, 0) + 2.0 * w.d2(0, 1) + w.d2(1, 1));
  return h_star + 2.0 * gamma * gamma * dh;
}

Verdict shear_monotonicity(const EnergyModel& m, const RGrid& grid, double tol) {
  return guarded("shear-monotone", [&] {
    require_invariant(m);
    return sign_check("shear-monotone", grid, tol, 1.0, "gamma", [&](double g) {
      const double i = 3.0 + g * g;
      return std::make_pair(cauchy_shear_slope(m, g), scale_of(m.invariant({i, i, 1.0})));
    });
  });
}

Verdict local_shear_monotonicity(const EnergyModel& m) {
  return guarded("local-shear", [&] {
    Verdict v;
    v.condition = "local-shear";
    v.witness_kind = "gamma";
    const ReferenceState ref = reference_state(m);
    const Empirical e = empirical_inequalities(m, {3.0, 3.0, 1.0});
    v.fitted = ref.shear_modulus;
    v.value = ref.shear_modulus;
    v.status = ref.shear_modulus > 0.0 ? Status::Pass : Status::Fail;
    if (v.failed()) v.witness = 0.0;
    v.detail = "d sigma12/d gamma (0) = mu = " + fmt("%.12g", ref.shear_modulus) +
               (e.pass ? "" : "; empirical inequalities fail at identity");
    return v;
  });
}

Verdict pucci_hstar_probe(const EnergyModel& m, const RGrid& grid, double tol) {
  return guarded("h*-probe", [&] {
    require_invariant(m);
    Verdict v = sign_check("h*-probe", grid, tol, 1.0, "gamma", [&](double g) {
      const double i = 3.0 + g * g;
      const Jet2 w = m.invariant_jet({i, i, 1.0});
      const double h_star = 2.0 * (w.d(0) + w.d(1));
      const double dh = 2.0 * (w.d2(0, 0) + 2.0 * w.d2(0, 1) + w.d2(1, 1));
      return std::make_pair(h_star + 2.0 * g * g * dh, scale_of(w.value()));
    });
    const Verdict a3 = check_aps3(m, grid, tol);
    int mismatches = 0;
    if (a3.samples.size() == v.samples.size()) {
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = grid[i];
        const double in = 3.0 + r * r;
        const double s = scale_of(m.invariant({in, in, 1.0}));
        const bool ok_probe = v.samples[i] >= -tol * s;
        const bool ok_aps3 = a3.samples[i] >= -0.5 * tol * s;
        if (ok_probe != ok_aps3) ++mismatches;
      }
    }
    v.extras.emplace_back("aps3_mismatches", mismatches);
    if (mismatches > 0) v.detail += (v.detail.empty() ? "" : "; ") + std::to_string(mismatches) +
                                    " samples disagree with APS3";
    return v;
  });
}

Verdict aps_plus_convexity(const EnergyModel& m, const ApsPlusOptions& opt) {
  return guarded("APS+", [&] {
    Verdict v;
    v.condition = "APS+";
    v.witness_kind = "trial";
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> plane(-3.0, 3.0);
    std::uniform_real_distribution<double> axial(-0.5, 1.5);
    std::uniform_real_distribution<double> radial(1.0, 6.0);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    int skipped = 0, violations = 0;
    double worst = 0.0;
    std::vector<double> w(opt.steps + 1);
    for (int trial = 0; trial < opt.trials; ++trial) {
      double u[3], eta[3];
      u[0] = plane(rng);
      u[1] = plane(rng);
      if (trial % 4 == 0) {
        // Radial segment in the APS plane.
        u[2] = 0.0;
        const double len = std::hypot(u[0], u[1]);
        const double s = radial(rng) * (coin(rng) < 0.5 ? -1.0 : 1.0);
        eta[0] = len > 1e-12 ? s * u[0] / len : s;
        eta[1] = len > 1e-12 ? s * u[1] / len : 0.0;
        eta[2] = 0.0;
      } else {
        u[2] = axial(rng);
        for (double& e : eta) e = plane(rng);
      }
      if (std::min(1.0 + u[2], 1.0 + u[2] + eta[2]) < opt.min_det) {
        ++skipped;
        continue;
      }
      for (int j = 0; j <= opt.steps; ++j) {
        const double t = static_cast<double>(j) / opt.steps;
        w[j] = m.evaluate(aps_plus_gradient(u[0] + t * eta[0], u[1] + t * eta[1], u[2] + t * eta[2]));
      }
      for (int j = 1; j < opt.steps; ++j) {
        const double d2 = w[j - 1] - 2.0 * w[j] + w[j + 1];
        const double s = std::max({1.0, std::abs(w[j - 1]), std::abs(w[j]), std::abs(w[j + 1])});
        if (d2 < -opt.tol * s) {
          ++violations;
          if (d2 / s < worst) {
            worst = d2 / s;
            v.witness = trial;
            v.value = d2;
          }
        }
      }
    }
    v.status = violations == 0 ? Status::Pass : Status::Fail;
    v.extras = {{"trials", static_cast<double>(opt.trials)},
                {"skipped", static_cast<double>(skipped)},
                {"violations", static_cast<double>(violations)},
                {"seed", static_cast<double>(opt.seed)}};
    v.detail = std::to_string(opt.trials - skipped) + " segments checked, " +
               std::to_string(skipped) + " skipped, " + std::to_string(violations) +
               " concavity violations";
    return v;
  });
}

Verdict tc_symmetry(const EnergyModel& m, const RGrid& grid, double tol) {
  return guarded("TC-symmetry", [&] {
    Verdict v;
    v.condition = "TC-symmetry";
    v.witness_kind = "sample";
    v.status = Status::Pass;
    double worst = 0.0;
    int sample = 0;
    auto compare = [&](double a, double b, const std::string& where) {
      const double s = std::max(scale_of(a), scale_of(b));
      const double gap = std::abs(a - b);
      if (gap > tol * s && gap / s > worst) {
        worst = gap / s;
        v.status = Status::Fail;
        v.witness = sample;
        v.value = gap;
        v.detail = "W(F) != W(F^-1) at " + where;
      }
      ++sample;
    };
    const double l1s[] = {1.2, 1.5, 2.0, 3.0, 5.0};
    const double l2s[] = {0.3, 0.7, 1.1, 2.5};
    for (double l1 : l1s) {
      for (double l2 : l2s) {
        const double l3 = 1.0 / (l1 * l2);
        const std::array<double, 3> lam{l1, l2, l3};
        const std::array<double, 3> inv{1.0 / l1, 1.0 / l2, l1 * l2};
        char where[96];
        std::snprintf(where, sizeof where, "eigenvalues (%g, %g, %.6g)", l1, l2, l3);
        if (m.has_invariant_form()) {
          const double i1 = l1 + l2 + l3;
          const double i2 = l1 * l2 + l2 * l3 + l1 * l3;
          if (std::abs(i1 - i2) > 1e-6)
            compare(m.invariant({i1, i2, 1.0}), m.invariant({i2, i1, 1.0}),
                    std::string(where) + " (invariant swap)");
        }
        compare(m.spectral(lam), m.spectral(inv), where);
      }
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto lam = simple_shear_eigenvalues(Jet2(grid[i]));
      const std::array<double, 3> a{lam[0].value(), lam[1].value(), lam[2].value()};
      const std::array<double, 3> b{1.0 / a[0], 1.0 / a[1], 1.0 / a[2]};
      compare(m.spectral(a), m.spectral(b), "simple shear gamma = " + fmt("%.6g", grid[i]));
    }
    if (v.failed()) {
      v.status = Status::NotApplicable;
      v.detail = "not symmetric: " + v.detail;
    } else if (m.has_invariant_form()) {
      const Verdict k1 = check_k1(m, grid);
      v.fitted = k1.fitted;
      if (!k1.passed() || std::abs(*k1.fitted - 0.5) >= 1e-8) {
        v.status = Status::Fail;
        v.detail = "symmetric but K1 constant is not 1/2 (" + k1.detail + ")";
        v.witness = k1.witness.value_or(0.0);
        v.witness_kind = "R";
      } else {
        v.detail = "symmetric, K1 b = 1/2";
      }
    }
    v.extras.emplace_back("samples", sample);
    return v;
  });
}

double alpha_threshold_bisect(double mu, const RGrid& grid, double tol, double alpha_tol) {
  if (!(mu > 0.0)) throw DomainError("alpha_threshold_bisect", "mu must be positive");
  const auto fails = [&](double a) { return check_aps2(pucci_energy(mu, a), grid, tol).failed(); };
  return bisect_threshold(fails, 1e-6, 1.0 - 1e-6, alpha_tol);
}

const Verdict* ConditionReport::find(const std::string& condition) const {
  for (const auto& v : verdicts)
    if (v.condition == condition) return &v;
  return nullptr;
}

bool ConditionReport::any_fail() const {
  return std::any_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.failed(); });
}

ConditionReport run_all_checks(const EnergyModel& m, const CheckOptions& opt) {
  ConditionReport r;
  r.model = m.name();
  r.params = m.params();
  r.volumetric = m.volumetric();
  r.notes = m.notes();
  r.grid = opt.grid.describe();
  r.seed = opt.aps_plus.seed;
  r.tol = opt.tol;
  const RGrid& g = opt.grid;

  const Verdict aps2 = check_aps2(m, g, opt.tol);
  Verdict aps1 = check_aps1(m, g, opt.tol);
  if (aps1.failed() && aps2.passed()) {
    aps1.status = Status::Inconclusive;
    aps1.detail = "APS1 inconclusive (sufficient condition only); " + aps1.detail;
  }
  const Verdict aps3 = check_aps3(m, g, opt.tol);
  r.verdicts = {aps2, aps1, aps3, fosdick_check(m, g, aps3), shear_monotonicity(m, g, opt.tol),
                pucci_hstar_probe(m, g, opt.tol)};
  r.verdicts.push_back(check_k1(m, g));
  r.verdicts.push_back(check_k2(m, g));
  r.verdicts.push_back(k2_equivalence_probe(m, g));
  r.verdicts.push_back(empirical_on_path(m, g, opt.tol));

  r.verdicts.push_back(guarded("reference", [&] {
    Verdict v;
    v.condition = "reference";
    const ReferenceState ref = reference_state(m);
    v.value = ref.residual_stress;
    v.fitted = ref.shear_modulus;
    v.extras = {{"residual_stress", ref.residual_stress}, {"shear_modulus", ref.shear_modulus}};
    if (std::abs(ref.residual_stress) < 1e-12 && ref.shear_modulus > 0.0) {
      v.status = Status::Pass;
      v.detail = "stress free, mu = " + fmt("%.12g", ref.shear_modulus);
    } else {
      v.status = Status::Inconclusive;
      v.detail = "residual stress " + fmt("%.6g", ref.residual_stress) + ", mu = " +
                 fmt("%.12g", ref.shear_modulus) + " (reported only)";
    }
    return v;
  }));
  r.verdicts.push_back(local_shear_monotonicity(m));
  r.verdicts.push_back(aps_plus_convexity(m, opt.aps_plus));
  r.verdicts.push_back(tc_symmetry(m, g, opt.tol));
  return r;
}

}  // namespace apsc
