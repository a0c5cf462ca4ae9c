#include "apsc/energy.hpp"

#include <stdexcept>

#include "apsc/error.hpp"
#include "apsc/spectral.hpp"

namespace apsc {

EnergyModel::EnergyModel(Spec spec) : spec_(std::move(spec)) {
  if (!spec_.invariant && !spec_.spectral)
    throw std::invalid_argument("energy '" + spec_.name + "' has no evaluation channel");
  if (spec_.validate) spec_.validate(spec_.params);
}

double EnergyModel::param(const std::string& key) const {
  const auto it = spec_.params.find(key);
  if (it == spec_.params.end())
    throw std::invalid_argument("energy '" + spec_.name + "' has no parameter '" + key + "'");
  return it->second;
}

EnergyModel EnergyModel::with_param(const std::string& key, double value) const {
  return with_params({{key, value}});
}

EnergyModel EnergyModel::with_params(const ParamTable& overrides) const {
  Spec s = spec_;
  for (const auto& [k, v] : overrides) {
    if (!s.params.count(k))
      throw std::invalid_argument("energy '" + s.name + "' has no parameter '" + k + "'");
    s.params[k] = v;
  }
  return EnergyModel(std::move(s));
}

EnergyModel EnergyModel::renamed(std::string name) const {
  Spec s = spec_;
  s.name = std::move(name);
  return EnergyModel(std::move(s));
}

EnergyModel EnergyModel::scaled(double c) const {
  if (!(c > 0.0)) throw DomainError("scaled", "factor must be positive");
  Spec s = spec_;
  if (s.invariant) {
    s.invariant = [f = *s.invariant, c](const Jet2& a, const Jet2& b, const Jet2& d,
                                         const ParamTable& p) { return c * f(a, b, d, p); };
  }
  if (s.spectral) {
    s.spectral = [f = *s.spectral, c](const std::array<Jet2, 3>& l, const ParamTable& p) {
      return c * f(l, p);
    };
  }
  return EnergyModel(std::move(s));
}

Jet2 EnergyModel::invariant(const Jet2& i1, const Jet2& i2, const Jet2& i3) const {
  if (!spec_.invariant)
    throw std::logic_error("energy '" + spec_.name + "' has no invariant form");
  return (*spec_.invariant)(i1, i2, i3, spec_.params);
}

double EnergyModel::invariant(const InvariantTriple& t) const {
  const int n = 1;
  return invariant(Jet2::constant(t.i1, n), Jet2::constant(t.i2, n), Jet2::constant(t.i3, n))
      .value();
}

Jet2 EnergyModel::invariant_jet(const InvariantTriple& t) const {
  const auto in = seed({t.i1, t.i2, t.i3}, 3);
  return invariant(in[0], in[1], in[2]);
}

Jet2 EnergyModel::spectral(const std::array<Jet2, 3>& l) const {
  if (spec_.spectral) return (*spec_.spectral)(l, spec_.params);
  const Jet2 i1 = l[0] + l[1] + l[2];
  const Jet2 i2 = l[0] * l[1] + l[1] * l[2] + l[0] * l[2];
  const Jet2 i3 = l[0] * l[1] * l[2];
  return invariant(i1, i2, i3);
}

double EnergyModel::spectral(const std::array<double, 3>& l) const {
  return spectral(std::array<Jet2, 3>{Jet2(l[0]), Jet2(l[1]), Jet2(l[2])}).value();
}

Jet2 EnergyModel::shear_path(const Jet2& gamma) const {
  if (!spec_.invariant) return shear_path_spectral(gamma);
  const Jet2 i = 3.0 + gamma * gamma;
  return invariant(i, i, Jet2::constant(1.0, gamma.nvars()));
}

Jet2 EnergyModel::shear_path_spectral(const Jet2& gamma) const {
  return spectral(simple_shear_eigenvalues(gamma));
}

double EnergyModel::evaluate(const Matrix3& F) const {
  const InvariantTriple t = invariants_of(F);
  if (spec_.invariant) return invariant(t);
  return spectral(eigenvalues_from_invariants(t.i1, t.i2, t.i3));
}

EnergyModel make_dsl_energy(const std::string& source, const ParamTable& params,
                            Compressibility c, std::string name) {
  const Expr e = parse(source, Dialect::energy());
  e.require_bound(params);
  EnergyModel::Spec s;
  s.name = std::move(name);
  s.params = params;
  s.compressibility = c;
  s.invariant = [e](const Jet2& a, const Jet2& b, const Jet2& d, const ParamTable& p) {
    const std::array<Jet2, 3> v{a, b, d};
    return e.eval(std::span<const Jet2>(v), p);
  };
  s.notes.push_back("expression: " + source);
  return EnergyModel(std::move(s));
}

}  // namespace apsc
