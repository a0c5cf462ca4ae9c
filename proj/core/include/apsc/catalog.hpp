#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "apsc/energy.hpp"

namespace apsc {

enum class Expect { Yes, No, NotApplicable };

/// Published verdicts for one catalog row. Regression targets only; no
/// checker reads them.
struct ExpectedVerdicts {
  bool aps_convex = true;
  /// K1 constant as a function of the parameters; nullopt when K1 fails.
  std::function<std::optional<double>(const ParamTable&)> k1_b;
  std::string k1_text;
  std::function<Expect(const ParamTable&)> k2;
  std::string k2_text;
  std::string rank1;  // display only
};

struct CatalogEntry {
  std::string label;
  EnergyModel model;
  ExpectedVerdicts expected;
};

/// The fourteen tabulated energies with default parameters.
std::vector<CatalogEntry> catalog();

/// Catalog entry by kebab-case name; throws std::invalid_argument if absent.
CatalogEntry catalog_entry(const std::string& name);

/// Catalog model or the counterexample energy ("pucci") by kebab-case name.
EnergyModel find_model(const std::string& name);

std::vector<std::string> model_names();

/// Counterexample energy built from log terms and a Blatz-Ko part.
/// Throws DomainError unless mu > 0 and 0 < alpha < 1.
EnergyModel pucci_energy(double mu, double alpha);

/// Isochoric part plus kappa/2 (sqrt(I3) - 1)^2 with kappa = ratio * mu.
/// Models already carrying a "kappa" volumetric parameter get it replaced;
/// others receive the penalty as an extra term. Requires an invariant form
/// and a "mu" parameter.
EnergyModel quasi_incompressible(const EnergyModel& model, double kappa_ratio = 1e4);

}  // namespace apsc
