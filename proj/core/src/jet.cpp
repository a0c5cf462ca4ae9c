#include "apsc/jet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "apsc/error.hpp"

namespace apsc {

Jet2 Jet2::variable(double value, int index, int nvars) {
  if (nvars < 1 || nvars > kMaxVars || index < 0 || index >= nvars)
    throw std::invalid_argument("Jet2::variable: index " + std::to_string(index) +
                                " out of range for nvars " + std::to_string(nvars));
  Jet2 j(value);
  j.nvars_ = nvars;
  j.grad_[index] = 1.0;
  return j;
}

Jet2 Jet2::constant(double value, int nvars) {
  Jet2 j(value);
  j.nvars_ = std::clamp(nvars, 1, kMaxVars);
  return j;
}

bool Jet2::is_constant() const {
  return std::all_of(grad_.begin(), grad_.end(), [](double g) { return g == 0.0; }) &&
         std::all_of(hess_.begin(), hess_.end(), [](double h) { return h == 0.0; });
}

Jet2 Jet2::unary(const Jet2& a, double f, double f1, double f2) {
  Jet2 r(f);
  r.nvars_ = a.nvars_;
  for (int i = 0; i < 3; ++i) r.grad_[i] = f1 * a.grad_[i];
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      const int k = packed(i, j);
      r.hess_[k] = f1 * a.hess_[k] + f2 * a.grad_[i] * a.grad_[j];
    }
  return r;
}

Jet2 Jet2::binary(const Jet2& a, const Jet2& b, double f, double fa, double fb, double faa,
                  double fab, double fbb) {
  Jet2 r(f);
  r.nvars_ = std::max(a.nvars_, b.nvars_);
  for (int i = 0; i < 3; ++i) r.grad_[i] = fa * a.grad_[i] + fb * b.grad_[i];
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      const int k = packed(i, j);
      r.hess_[k] = fa * a.hess_[k] + fb * b.hess_[k] + faa * a.grad_[i] * a.grad_[j] +
                   fab * (a.grad_[i] * b.grad_[j] + b.grad_[i] * a.grad_[j]) +
                   fbb * b.grad_[i] * b.grad_[j];
    }
  return r;
}

Jet2 Jet2::chain(std::span<const Jet2, 3> in, double f, const std::array<double, 3>& df,
                 const std::array<double, 6>& d2f) {
  Jet2 r(f);
  r.nvars_ = std::max({in[0].nvars_, in[1].nvars_, in[2].nvars_});
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 3; ++a) r.grad_[i] += df[a] * in[a].grad_[i];
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      const int k = packed(i, j);
      double h = 0.0;
      for (int a = 0; a < 3; ++a) {
        h += df[a] * in[a].hess_[k];
        for (int b = 0; b < 3; ++b) h += d2f[packed(a, b)] * in[a].grad_[i] * in[b].grad_[j];
      }
      r.hess_[k] = h;
    }
  return r;
}

Jet2& Jet2::operator+=(const Jet2& o) {
  value_ += o.value_;
  for (int i = 0; i < 3; ++i) grad_[i] += o.grad_[i];
  for (int k = 0; k < 6; ++k) hess_[k] += o.hess_[k];
  nvars_ = std::max(nvars_, o.nvars_);
  return *this;
}

Jet2& Jet2::operator-=(const Jet2& o) {
  value_ -= o.value_;
  for (int i = 0; i < 3; ++i) grad_[i] -= o.grad_[i];
  for (int k = 0; k < 6; ++k) hess_[k] -= o.hess_[k];
  nvars_ = std::max(nvars_, o.nvars_);
  return *this;
}

Jet2& Jet2::operator*=(const Jet2& o) { return *this = *this * o; }
Jet2& Jet2::operator/=(const Jet2& o) { return *this = *this / o; }

std::array<Jet2, 3> seed(const std::array<double, 3>& values, int nvars) {
  if (nvars < 1 || nvars > Jet2::kMaxVars)
    throw std::invalid_argument("seed: nvars must be in [1, 3], got " + std::to_string(nvars));
  std::array<Jet2, 3> out;
  for (int i = 0; i < 3; ++i) {
    out[i] = i < nvars ? Jet2::variable(values[i], i, nvars) : Jet2::constant(values[i], nvars);
  }
  return out;
}

Jet2 operator-(const Jet2& a) { return Jet2::unary(a, -a.value(), -1.0, 0.0); }

Jet2 operator+(const Jet2& a, const Jet2& b) {
  Jet2 r = a;
  r += b;
  return r;
}

Jet2 operator-(const Jet2& a, const Jet2& b) {
  Jet2 r = a;
  r -= b;
  return r;
}

Jet2 operator*(const Jet2& a, const Jet2& b) {
  return Jet2::binary(a, b, a.value() * b.value(), b.value(), a.value(), 0.0, 1.0, 0.0);
}

Jet2 operator/(const Jet2& a, const Jet2& b) {
  const double bv = b.value();
  if (bv == 0.0) throw DomainError("div", "division by zero");
  const double q = a.value() / bv;
  const double inv = 1.0 / bv;
  return Jet2::binary(a, b, q, inv, -q * inv, 0.0, -inv * inv, 2.0 * q * inv * inv);
}

double exp(double a) { return std::exp(a); }

double log(double a) {
  if (!(a > 0.0)) throw DomainError("log", "argument " + std::to_string(a) + " is not positive");
  return std::log(a);
}

double sqrt(double a) {
  if (!(a > 0.0)) throw DomainError("sqrt", "argument " + std::to_string(a) + " is not positive");
  return std::sqrt(a);
}

namespace {
bool is_integer(double p) { return std::isfinite(p) && std::floor(p) == p; }
}  // namespace

double pow(double a, double p) {
  if (a < 0.0 && !is_integer(p))
    throw DomainError("pow", "negative base " + std::to_string(a) + " with non-integer exponent");
  if (a == 0.0 && p < 0.0) throw DomainError("pow", "zero base with negative exponent");
  return std::pow(a, p);
}

Jet2 exp(const Jet2& a) {
  const double e = std::exp(a.value());
  return Jet2::unary(a, e, e, e);
}

Jet2 log(const Jet2& a) {
  const double v = a.value();
  const double l = apsc::log(v);
  return Jet2::unary(a, l, 1.0 / v, -1.0 / (v * v));
}

Jet2 sqrt(const Jet2& a) {
  const double v = a.value();
  const double s = apsc::sqrt(v);
  return Jet2::unary(a, s, 0.5 / s, -0.25 / (s * v));
}

Jet2 pow(const Jet2& a, double p) {
  const double v = a.value();
  const double f = apsc::pow(v, p);
  if (p == 0.0) return Jet2::unary(a, f, 0.0, 0.0);
  if (v == 0.0) {
    if (p < 2.0 && !(p == 1.0))
      throw DomainError("pow", "derivative of zero base with exponent " + std::to_string(p));
    const double f1 = p == 1.0 ? 1.0 : 0.0;
    const double f2 = p == 2.0 ? 2.0 : 0.0;
    return Jet2::unary(a, f, f1, f2);
  }
  const double f1 = p * std::pow(v, p - 1.0);
  const double f2 = p * (p - 1.0) * std::pow(v, p - 2.0);
  return Jet2::unary(a, f, f1, f2);
}

Jet2 pow(const Jet2& a, const Jet2& p) {
  if (p.is_constant()) return pow(a, p.value());
  const double v = a.value();
  const double e = p.value();
  if (!(v > 0.0))
    throw DomainError("pow", "variable exponent requires a positive base, got " + std::to_string(v));
  const double f = std::pow(v, e);
  const double l = std::log(v);
  const double fa = e * std::pow(v, e - 1.0);
  const double fb = f * l;
  const double faa = e * (e - 1.0) * std::pow(v, e - 2.0);
  const double fab = std::pow(v, e - 1.0) * (1.0 + e * l);
  const double fbb = f * l * l;
  return Jet2::binary(a, p, f, fa, fb, faa, fab, fbb);
}

}  // namespace apsc
