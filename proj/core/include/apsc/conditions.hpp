#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "apsc/energy.hpp"
#include "apsc/grid.hpp"
#include "apsc/kinematics.hpp"

namespace apsc {

enum class Status { Pass, Fail, NotApplicable, Inconclusive };
const char* to_string(Status s);

/// Outcome of one condition check. A failing verdict always names a witness.
struct Verdict {
  std::string condition;
  Status status = Status::NotApplicable;
  std::string witness_kind;  // "R", "gamma", "trial", "sample"
  std::optional<double> witness;
  std::optional<std::size_t> witness_index;  // grid index for path checks
  std::optional<double> value;               // violated (or decisive) value
  std::optional<double> fitted;              // b for K1, mu for shear modulus
  std::string detail;
  std::vector<double> samples;  // per grid point quantity, when grid based
  std::vector<std::pair<std::string, double>> extras;

  bool passed() const { return status == Status::Pass; }
  bool failed() const { return status == Status::Fail; }
};

/// Invariant derivatives of W at (3+R^2, 3+R^2, 1) plus d^2W/dR^2 along the path.
struct PathSample {
  double r = 0.0;
  Jet2 w;        // jet in R
  Jet2 partials; // jet in (I1, I2, I3)

  double w1() const { return partials.d(0); }
  double w2() const { return partials.d(1); }
  double w3() const { return partials.d(2); }
  double h(int i, int j) const { return partials.d2(i, j); }
  double scale() const;
};

/// Throws std::logic_error for a model without an invariant form.
PathSample path_sample(const EnergyModel& m, double r);

/// d^2/dR^2 W(3+R^2, 3+R^2, 1).
double aps2_quantity(const EnergyModel& m, double r);

Verdict check_aps2(const EnergyModel& m, const RGrid& grid, double tol = 1e-9);
Verdict check_aps1(const EnergyModel& m, const RGrid& grid, double tol = 1e-9);
Verdict check_aps3(const EnergyModel& m, const RGrid& grid, double tol = 1e-9);
/// Applicable only when `aps3` passed.
Verdict fosdick_check(const EnergyModel& m, const RGrid& grid, const Verdict& aps3);
Verdict check_k1(const EnergyModel& m, const RGrid& grid, double spread_tol = 1e-8);

/// Left side of the second compatibility identity at (I, I, 1).
double k2_residual(const EnergyModel& m, double i);
Verdict check_k2(const EnergyModel& m, const RGrid& grid, double tol = 1e-8);

struct K2Probe {
  double direct = 0.0;    // k2 residual
  double via_q = 0.0;     // q~'(R^2) - W2, expected to equal 2 * direct
};
/// q(I1, I2) = 2 W3 + 2 W1 + 2 (I1 - 1) W2 differentiated along the path
/// from separate two-variable jet evaluations.
K2Probe k2_probe_at(const EnergyModel& m, double r);
Verdict k2_equivalence_probe(const EnergyModel& m, const RGrid& grid, double tol = 1e-8);

struct Empirical {
  double beta0 = 0.0;
  double beta1 = 0.0;
  double beta_m1 = 0.0;
  bool beta0_applicable = true;
  bool pass = false;
};
Empirical empirical_inequalities(const EnergyModel& m, const InvariantTriple& t, double tol = 1e-9);
/// The empirical inequalities at the reference state and along the grid path.
Verdict empirical_on_path(const EnergyModel& m, const RGrid& grid, double tol = 1e-9);

struct ReferenceState {
  double residual_stress = 0.0;
  double shear_modulus = 0.0;
};
ReferenceState reference_state(const EnergyModel& m);

/// sigma_12 = (beta1 - beta_-1) gamma along simple shear.
double cauchy_shear_stress(const EnergyModel& m, double gamma);
/// d sigma_12 / d gamma.
double cauchy_shear_slope(const EnergyModel& m, double gamma);
Verdict shear_monotonicity(const EnergyModel& m, const RGrid& grid, double tol = 1e-9);
Verdict local_shear_monotonicity(const EnergyModel& m);

Verdict pucci_hstar_probe(const EnergyModel& m, const RGrid& grid, double tol = 1e-9);

struct ApsPlusOptions {
  int trials = 256;
  std::uint64_t seed = 20171u;
  int steps = 8;          // second differences on t = 0, 1/steps, ..., 1
  double tol = 1e-9;
  double min_det = 0.05;  // segments reaching 1 + u3 + t eta3 below this are skipped
};
Verdict aps_plus_convexity(const EnergyModel& m, const ApsPlusOptions& opt = {});

/// Pass for W(F) = W(F^-1) with K1 b = 1/2; not applicable (with a witness)
/// when asymmetric; fail when symmetric but b differs from 1/2.
Verdict tc_symmetry(const EnergyModel& m, const RGrid& grid, double tol = 1e-9);

/// Smallest alpha at which the counterexample energy loses APS2 on `grid`.
double alpha_threshold_bisect(double mu, const RGrid& grid = default_grid(), double tol = 1e-9,
                              double alpha_tol = 1e-6);

struct CheckOptions {
  RGrid grid = default_grid();
  double tol = 1e-9;
  ApsPlusOptions aps_plus;
};

struct ConditionReport {
  std::string model;
  ParamTable params;
  std::string volumetric;
  std::vector<std::string> notes;
  std::string grid;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::vector<Verdict> verdicts;

  const Verdict* find(const std::string& condition) const;
  bool any_fail() const;
};

/// Every applicable check. Evaluation domain errors turn into
/// not-applicable verdicts carrying the cause.
ConditionReport run_all_checks(const EnergyModel& m, const CheckOptions& opt = {});

}  // namespace apsc
