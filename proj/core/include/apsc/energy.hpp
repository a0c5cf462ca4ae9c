#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "apsc/expr.hpp"
#include "apsc/jet.hpp"
#include "apsc/kinematics.hpp"

namespace apsc {

enum class Compressibility { Compressible, IncompressibleOnly };

/// W(I1, I2, I3; params) over jets.
using InvariantForm = std::function<Jet2(const Jet2&, const Jet2&, const Jet2&, const ParamTable&)>;
/// W from the three eigenvalues of B.
using SpectralForm = std::function<Jet2(const std::array<Jet2, 3>&, const ParamTable&)>;
/// Throws DomainError when a parameter set is unusable.
using ParamValidator = std::function<void(const ParamTable&)>;

/// A named isotropic energy. Immutable; `with_param` returns a modified copy.
///
/// The invariant channel is optional. The spectral channel always exists:
/// when no native eigenvalue formula is supplied it forms the invariants from
/// the eigenvalues and defers to the invariant channel.
class EnergyModel {
public:
  struct Spec {
    std::string name;
    ParamTable params;
    Compressibility compressibility = Compressibility::Compressible;
    std::optional<InvariantForm> invariant;
    std::optional<SpectralForm> spectral;
    ParamValidator validate;
    std::string volumetric;  // description of the volumetric term, empty if none
    std::vector<std::string> notes;
  };

  explicit EnergyModel(Spec spec);

  const std::string& name() const { return spec_.name; }
  const ParamTable& params() const { return spec_.params; }
  double param(const std::string& key) const;
  Compressibility compressibility() const { return spec_.compressibility; }
  bool compressible() const { return spec_.compressibility == Compressibility::Compressible; }
  bool has_invariant_form() const { return spec_.invariant.has_value(); }
  bool has_native_spectral_form() const { return spec_.spectral.has_value(); }
  const std::string& volumetric() const { return spec_.volumetric; }
  const std::vector<std::string>& notes() const { return spec_.notes; }
  const Spec& spec() const { return spec_; }

  /// Copy with one parameter replaced. Throws std::invalid_argument for an
  /// unknown key and DomainError when the validator rejects the value.
  EnergyModel with_param(const std::string& key, double value) const;
  EnergyModel with_params(const ParamTable& overrides) const;
  EnergyModel renamed(std::string name) const;
  /// c * W, for c > 0.
  EnergyModel scaled(double c) const;

  /// Throws std::logic_error when the model has no invariant form.
  Jet2 invariant(const Jet2& i1, const Jet2& i2, const Jet2& i3) const;
  double invariant(const InvariantTriple& t) const;
  /// Value, gradient and Hessian with respect to (I1, I2, I3).
  Jet2 invariant_jet(const InvariantTriple& t) const;

  Jet2 spectral(const std::array<Jet2, 3>& lambdas) const;
  double spectral(const std::array<double, 3>& lambdas) const;

  /// W(3+g^2, 3+g^2, 1) through the invariant channel when present,
  /// else through the eigenvalues of simple shear.
  Jet2 shear_path(const Jet2& gamma) const;
  /// W along simple shear, always through the eigenvalue channel.
  Jet2 shear_path_spectral(const Jet2& gamma) const;

  /// W(F) for a general deformation gradient.
  double evaluate(const Matrix3& F) const;

private:
  Spec spec_;
};

/// Energy defined by an expression in I1, I2, I3.
/// Throws std::invalid_argument if a parameter of the expression is unbound.
EnergyModel make_dsl_energy(const std::string& source, const ParamTable& params,
                            Compressibility c = Compressibility::Compressible,
                            std::string name = "dsl");

}  // namespace apsc
