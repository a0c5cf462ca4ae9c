#include "apsc/catalog.hpp"

#include <cmath>
#include <stdexcept>

#include "apsc/error.hpp"
#include "apsc/spectral.hpp"

namespace apsc {

namespace {

const double kSqrt3 = std::sqrt(3.0);
const char* kVolumetric = "h(I3) = kappa/2 (sqrt(I3) - 1)^2";

Jet2 sq(const Jet2& a) { return a * a; }

Jet2 volumetric(const Jet2& i3, double kappa) { return 0.5 * kappa * sq(sqrt(i3) - 1.0); }

Jet2 iso_i1(const Jet2& i1, const Jet2& i3) { return i1 * pow(i3, -1.0 / 3.0); }
Jet2 iso_i2(const Jet2& i2, const Jet2& i3) { return i2 * pow(i3, -2.0 / 3.0); }

void require_positive(const ParamTable& p, const char* key) {
  const auto it = p.find(key);
  if (it != p.end() && !(it->second > 0.0))
    throw DomainError("params", std::string(key) + " must be positive");
}

std::function<std::optional<double>(const ParamTable&)> constant_b(std::optional<double> b) {
  return [b](const ParamTable&) { return b; };
}

std::function<Expect(const ParamTable&)> constant_k2(Expect e) {
  return [e](const ParamTable&) { return e; };
}

// Squared deviatoric and volumetric parts of the Hencky strain log V, from
// logarithmic principal stretches.
struct LogStrain {
  Jet2 dev_sq;
  Jet2 tr;
};

LogStrain log_strain_spectral(const std::array<Jet2, 3>& l) {
  std::array<Jet2, 3> e;
  for (int i = 0; i < 3; ++i) e[i] = 0.5 * log(l[i]);
  const Jet2 tr = e[0] + e[1] + e[2];
  return {sq(e[0]) + sq(e[1]) + sq(e[2]) - sq(tr) / 3.0, tr};
}

LogStrain log_strain_invariant(const Jet2& i1, const Jet2& i2, const Jet2& i3) {
  const Jet2 s = sum_log_sq(i1, i2, i3);
  const Jet2 l3 = log(i3);
  return {s / 4.0 - sq(l3) / 12.0, 0.5 * l3};
}

CatalogEntry neo_hooke() {
  EnergyModel::Spec s;
  s.name = "neo-hooke";
  s.params = {{"mu", 1.0}, {"kappa", 1.0}};
  s.invariant = [](const Jet2& i1, const Jet2&, const Jet2& i3, const ParamTable& p) {
    return 0.5 * p.at("mu") * (iso_i1(i1, i3) - 3.0) + volumetric(i3, p.at("kappa"));
  };
  s.validate = [](const ParamTable& p) { require_positive(p, "mu"); };
  s.volumetric = kVolumetric;
  ExpectedVerdicts e{true, constant_b(0.0), "b=0", constant_k2(Expect::No), "No", "Yes"};
  return {"vol.+iso. Neo-Hooke", EnergyModel(std::move(s)), e};
}

CatalogEntry mooney_rivlin() {
  EnergyModel::Spec s;
  s.name = "mooney-rivlin";
  s.params = {{"mu", 1.0}, {"alpha", 0.5}, {"kappa", 1.0}};
  s.invariant = [](const Jet2& i1, const Jet2& i2, const Jet2& i3, const ParamTable& p) {
    const double a = p.at("alpha");
    return 0.5 * p.at("mu") * (a * (iso_i1(i1, i3) - 3.0) + (1.0 - a) * (iso_i2(i2, i3) - 3.0)) +
           volumetric(i3, p.at("kappa"));
  };
  s.validate = [](const ParamTable& p) { require_positive(p, "mu"); };
  s.volumetric = kVolumetric;
  ExpectedVerdicts e{true,
                     [](const ParamTable& p) -> std::optional<double> { return 1.0 - p.at("alpha"); },
                     "b=1-alpha", constant_k2(Expect::No), "No", "Yes"};
  return {"vol.+iso. Mooney-Rivlin", EnergyModel(std::move(s)), e};
}

CatalogEntry blatz_ko() {
  EnergyModel::Spec s;
  s.name = "blatz-ko";
  s.params = {{"mu", 1.0}};
  s.invariant = [](const Jet2& i1, const Jet2&, const Jet2& i3, const ParamTable& p) {
    return 0.5 * p.at("mu") * (i1 + 2.0 / sqrt(i3) - 5.0);
  };
  s.validate = [](const ParamTable& p) { require_positive(p, "mu"); };
  ExpectedVerdicts e{true, constant_b(0.0), "b=0", constant_k2(Expect::Yes), "Yes", "Yes"};
  return {"Blatz-Ko", EnergyModel(std::move(s)), e};
}

CatalogEntry veronda_westman() {
  EnergyModel::Spec s;
  s.name = "veronda-westman";
  s.params = {{"mu", 1.0}, {"gamma", 1.0}, {"kappa", 1.0}};
  s.invariant = [](const Jet2& i1, const Jet2& i2, const Jet2& i3, const ParamTable& p) {
    const double g = p.at("gamma");
    return p.at("mu") * ((exp(g * (i1 - 3.0)) - 1.0) / g - (i2 - 3.0) / 2.0) +
           volumetric(i3, p.at("kappa"));
  };
  s.validate = [](const ParamTable& p) {
    require_positive(p, "mu");
    require_positive(p, "gamma");
  };
  s.volumetric = kVolumetric;
  ExpectedVerdicts e{true, constant_b(std::nullopt), "No", constant_k2(Expect::No), "No", "No"};
  return {"Veronda-Westman", EnergyModel(std::move(s)), e};
}

CatalogEntry mihai_neff() {
  EnergyModel::Spec s;
  s.name = "mihai-neff";
  s.params = {{"mu", 1.0}, {"mu_tilde", 1.0 / 3.0}, {"kappa", 1.0}};
  s.invariant = [](const Jet2& i1, const Jet2&, const Jet2& i3, const ParamTable& p) {
    return 0.5 * p.at("mu") * (iso_i1(i1, i3) - 3.0) + 0.25 * p.at("mu_tilde") * sq(i1 - 3.0) +
           volumetric(i3, p.at("kappa"));
  };
  s.validate = [](const ParamTable& p) { require_positive(p, "mu"); };
  s.volumetric = kVolumetric;
  ExpectedVerdicts e{true, constant_b(0.0), "b=0",
                     [](const ParamTable& p) {
                       const double mu = p.at("mu");
                       return std::abs(p.at("mu_tilde") - mu / 3.0) <= 1e-12 * std::max(1.0, mu)
                                  ? Expect::Yes
                                  : Expect::No;
                     },
                     "mu_tilde=mu/3", "No"};
  return {"Mihai-Neff", EnergyModel(std::move(s)), e};
}

CatalogEntry knowles() {
  EnergyModel::Spec s;
  s.name = "knowles";
  s.params = {{"mu", 1.0}, {"b", 1.0}, {"n", 1.0}, {"D1", 2.0}};
  s.invariant = [](const Jet2& i1, const Jet2&, const Jet2& i3, const ParamTable& p) {
    const double b = p.at("b"), n = p.at("n");
    const Jet2 base = 1.0 + b / n * (iso_i1(i1, i3) - 3.0);
    return p.at("mu") / (2.0 * b) * (pow(base, n) - 1.0) + sq(sqrt(i3) - 1.0) / p.at("D1");
  };
  s.validate = [](const ParamTable& p) {
    for (const char* k : {"mu", "b", "n", "D1"}) require_positive(p, k);
  };
  s.volumetric = "1/D1 (sqrt(I3) - 1)^2";
  ExpectedVerdicts e{true, constant_b(0.0), "b=0", constant_k2(Expect::No), "No", "?"};
  return {"Knowles", EnergyModel(std::move(s)), e};
}

CatalogEntry bazant() {
  EnergyModel::Spec s;
  s.name = "bazant";
  s.invariant = [](const Jet2& i1, const Jet2& i2, const Jet2& i3, const ParamTable&) {
    return sq(i1) - 2.0 * i2 + sq(i2) / sq(i3) - 2.0 * i1 / i3 - 6.0;
  };
  s.spectral = [](const std::array<Jet2, 3>& l, const ParamTable&) {
    Jet2 w = Jet2::constant(0.0, l[0].nvars());
    for (const auto& x : l) w += sq(x - 1.0 / x);
    return w;
  };
  ExpectedVerdicts e{true, constant_b(0.5), "b=1/2", constant_k2(Expect::No), "No", "No"};
  return {"Bazant", EnergyModel(std::move(s)), e};
}

CatalogEntry ciarlet() {
  EnergyModel::Spec s;
  s.name = "ciarlet";
  s.params = {{"c1", 1.0}, {"c2", 1.0}, {"kappa", 1.0}};
  s.invariant = [](const Jet2& i1, const Jet2& i2, const Jet2& i3, const ParamTable& p) {
    const double c1 = p.at("c1"), c2 = p.at("c2");
    return 0.5 * c1 * i1 + 0.5 * c2 * i2 + volumetric(i3, p.at("kappa")) - 1.5 * (c1 + c2);
  };
  s.validate = [](const ParamTable& p) {
    if (p.at("c1") < 0.0 || p.at("c2") < 0.0 || !(p.at("c1") + p.at("c2") > 0.0))
      throw DomainError("params", "c1, c2 must be non-negative and not both zero");
  };
  s.volumetric = "h(det F) = kappa/2 (det F - 1)^2";
  ExpectedVerdicts e{true,
                     [](const ParamTable& p) -> std::optional<double> {
                       return p.at("c2") / (p.at("c1") + p.at("c2"));
                     },
                     "b=c2/(c1+c2)",
                     [](const ParamTable& p) { return p.at("c2") == 0.0 ? Expect::Yes : Expect::No; },
                     "c2=0", "Yes"};
  return {"Ciarlet", EnergyModel(std::move(s)), e};
}

CatalogEntry svk() {
  EnergyModel::Spec s;
  s.name = "svk";
  s.params = {{"mu", 1.0}, {"lambda", 1.0}};
  s.compressibility = Compressibility::IncompressibleOnly;
  s.invariant = [](const Jet2& i1, const Jet2& i2, const Jet2&, const ParamTable& p) {
    return 0.25 * p.at("mu") * (sq(i1) - 2.0 * i2 - 2.0 * i1 + 3.0) +
           0.125 * p.at("lambda") * sq(i1 - 3.0);
  };
  s.validate = [](const ParamTable& p) { require_positive(p, "mu"); };
  ExpectedVerdicts e{true, constant_b(std::nullopt), "No", constant_k2(Expect::NotApplicable),
                     "n.a.", "No"};
  return {"SVK", EnergyModel(std::move(s)), e};
}

CatalogEntry fourth_order() {
  EnergyModel::Spec s;
  s.name = "fourth-order";
  s.params = {{"mu", 1.0}, {"A", 1.0}, {"D", 1.0}};
  s.compressibility = Compressibility::IncompressibleOnly;
  s.invariant = [](const Jet2& i1, const Jet2& i2, const Jet2& i3, const ParamTable& p) {
    // E = (C - 1)/2; traces of powers of C - 1 from the invariants.
    const Jet2 tr2 = sq(i1) - 2.0 * i2 - 2.0 * i1 + 3.0;
    const Jet2 trc3 = i1 * i1 * i1 - 3.0 * i1 * i2 + 3.0 * i3;
    const Jet2 trc2 = sq(i1) - 2.0 * i2;
    const Jet2 tr3 = trc3 - 3.0 * trc2 + 3.0 * i1 - 3.0;
    const Jet2 e2 = 0.25 * tr2;
    const Jet2 e3 = 0.125 * tr3;
    return p.at("mu") * e2 + 0.5 * p.at("A") * e3 + p.at("D") * sq(e2);
  };
  s.validate = [](const ParamTable& p) { require_positive(p, "mu"); };
  ExpectedVerdicts e{true, constant_b(std::nullopt), "No", constant_k2(Expect::NotApplicable),
                     "n.a.", "No"};
  return {"4th Order", EnergyModel(std::move(s)), e};
}

CatalogEntry hencky() {
  EnergyModel::Spec s;
  s.name = "hencky";
  s.params = {{"mu", 1.0}, {"kappa", 1.0}};
  s.invariant = [](const Jet2& i1, const Jet2& i2, const Jet2& i3, const ParamTable& p) {
    const LogStrain e = log_strain_invariant(i1, i2, i3);
    return p.at("mu") * e.dev_sq + 0.5 * p.at("kappa") * sq(e.tr);
  };
  s.spectral = [](const std::array<Jet2, 3>& l, const ParamTable& p) {
    const LogStrain e = log_strain_spectral(l);
    return p.at("mu") * e.dev_sq + 0.5 * p.at("kappa") * sq(e.tr);
  };
  s.validate = [](const ParamTable& p) { require_positive(p, "mu"); };
  s.volumetric = "kappa/2 (tr log V)^2";
  ExpectedVerdicts e{false, constant_b(0.5), "b=1/2", constant_k2(Expect::No), "No", "No"};
  return {"Hencky", EnergyModel(std::move(s)), e};
}

Jet2 exp_hencky_from(const LogStrain& e, const ParamTable& p) {
  const double mu = p.at("mu"), kappa = p.at("kappa"), k = p.at("k"), kh = p.at("k_hat");
  return mu / k * (exp(k * e.dev_sq) - 1.0) + kappa / (2.0 * kh) * (exp(kh * sq(e.tr)) - 1.0);
}

CatalogEntry exp_hencky() {
  EnergyModel::Spec s;
  s.name = "exp-hencky";
  s.params = {{"mu", 1.0}, {"kappa", 1.0}, {"k", 1.0}, {"k_hat", 1.0}};
  s.invariant = [](const Jet2& i1, const Jet2& i2, const Jet2& i3, const ParamTable& p) {
    return exp_hencky_from(log_strain_invariant(i1, i2, i3), p);
  };
  s.spectral = [](const std::array<Jet2, 3>& l, const ParamTable& p) {
    return exp_hencky_from(log_strain_spectral(l), p);
  };
  s.validate = [](const ParamTable& p) {
    for (const char* k : {"mu", "k", "k_hat"}) require_positive(p, k);
  };
  s.volumetric = "kappa/(2 k_hat) exp(k_hat (tr log V)^2)";
  ExpectedVerdicts e{true, constant_b(0.5), "b=1/2", constant_k2(Expect::No), "No", "No"};
  return {"exp-Hencky", EnergyModel(std::move(s)), e};
}

CatalogEntry martin_neff() {
  EnergyModel::Spec s;
  s.name = "martin-neff";
  s.invariant = [](const Jet2& i1, const Jet2& i2, const Jet2& i3, const ParamTable&) {
    return pow(i1, 1.5) / sqrt(i3) + pow(i2, 1.5) / i3 - 6.0 * kSqrt3;
  };
  s.spectral = [](const std::array<Jet2, 3>& l, const ParamTable&) {
    const Jet2 f2 = l[0] + l[1] + l[2];                     // |F|^2
    const Jet2 finv2 = 1.0 / l[0] + 1.0 / l[1] + 1.0 / l[2];  // |F^-1|^2
    const Jet2 det = sqrt(l[0] * l[1] * l[2]);
    return pow(f2, 1.5) / det + det * pow(finv2, 1.5) - 6.0 * kSqrt3;
  };
  ExpectedVerdicts e{true, constant_b(0.5), "b=1/2", constant_k2(Expect::No), "No", "Yes"};
  return {"Martin-Neff", EnergyModel(std::move(s)), e};
}

CatalogEntry sqrt_invariant_model() {
  EnergyModel::Spec s;
  s.name = "model";
  s.params = {{"c1", 1.0}};
  s.invariant = [](const Jet2& i1, const Jet2& i2, const Jet2& i3, const ParamTable& p) {
    return p.at("c1") * (sqrt(i1) + sqrt(i2) + kSqrt3 / sqrt(i3) - 3.0 * kSqrt3);
  };
  s.spectral = [](const std::array<Jet2, 3>& l, const ParamTable& p) {
    const Jet2 f = sqrt(l[0] + l[1] + l[2]);
    const Jet2 cof = sqrt(l[0] * l[1] + l[1] * l[2] + l[0] * l[2]);
    return p.at("c1") * (f + cof + kSqrt3 / sqrt(l[0] * l[1] * l[2]) - 3.0 * kSqrt3);
  };
  s.validate = [](const ParamTable& p) { require_positive(p, "c1"); };
  s.notes.push_back("no viable approximation to linear elasticity at F = id");
  ExpectedVerdicts e{true, constant_b(0.5), "b=1/2", constant_k2(Expect::Yes), "Yes", "Yes"};
  return {"Model", EnergyModel(std::move(s)), e};
}

}  // namespace

std::vector<CatalogEntry> catalog() {
  return {neo_hooke(), mooney_rivlin(), blatz_ko(), veronda_westman(), mihai_neff(),
          knowles(),   bazant(),        ciarlet(),  svk(),             fourth_order(),
          hencky(),    exp_hencky(),    martin_neff(), sqrt_invariant_model()};
}

std::vector<std::string> model_names() {
  std::vector<std::string> names;
  for (const auto& e : catalog()) names.push_back(e.model.name());
  names.push_back("pucci");
  return names;
}

CatalogEntry catalog_entry(const std::string& name) {
  for (auto& e : catalog())
    if (e.model.name() == name) return e;
  std::string known;
  for (const auto& n : model_names()) known += (known.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown model '" + name + "' (known: " + known + ")");
}

EnergyModel find_model(const std::string& name) {
  if (name == "pucci") return pucci_energy(1.0, 0.95);
  return catalog_entry(name).model;
}

EnergyModel pucci_energy(double mu, double alpha) {
  EnergyModel::Spec s;
  s.name = "pucci";
  s.params = {{"mu", mu}, {"alpha", alpha}};
  s.invariant = [](const Jet2& i1, const Jet2& i2, const Jet2& i3, const ParamTable& p) {
    const double m = p.at("mu"), a = p.at("alpha");
    return 0.75 * m * a * (log(i1) + log(i2) - log(i3) - 2.0 * std::log(3.0)) +
           0.5 * m * (1.0 - a) * (i1 + 2.0 / sqrt(i3) - 5.0);
  };
  s.validate = [](const ParamTable& p) {
    if (!(p.at("mu") > 0.0)) throw DomainError("pucci", "mu must be positive");
    const double a = p.at("alpha");
    if (!(a > 0.0 && a < 1.0)) throw DomainError("pucci", "alpha must lie in (0, 1)");
  };
  return EnergyModel(std::move(s));
}

EnergyModel quasi_incompressible(const EnergyModel& model, double kappa_ratio) {
  if (!model.has_invariant_form())
    throw DomainError("quasi_incompressible", "model '" + model.name() + "' has no invariant form");
  if (!model.params().count("mu"))
    throw DomainError("quasi_incompressible", "model '" + model.name() + "' has no parameter mu");
  if (!(kappa_ratio > 0.0)) throw DomainError("quasi_incompressible", "ratio must be positive");
  const double kappa = kappa_ratio * model.param("mu");
  if (model.params().count("kappa"))
    return model.with_param("kappa", kappa).renamed(model.name() + "+qi");

  EnergyModel::Spec s;
  s.name = model.name() + "+qi";
  s.params = model.params();
  s.params["kappa"] = kappa;
  s.compressibility = Compressibility::Compressible;
  s.invariant = [f = *model.spec().invariant](const Jet2& i1, const Jet2& i2, const Jet2& i3,
                                               const ParamTable& p) {
    return f(i1, i2, i3, p) + volumetric(i3, p.at("kappa"));
  };
  s.volumetric = kVolumetric;
  return EnergyModel(std::move(s));
}

}  // namespace apsc
