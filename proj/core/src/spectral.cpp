#include "apsc/spectral.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>

#include "apsc/error.hpp"

namespace apsc {

namespace {

using quad = __float128;

constexpr int kSeriesTerms = 40;
// Series used while sum (lambda_i - 1)^2 stays below this, i.e. |lambda_i - 1| < 0.1.
constexpr double kSeriesRadiusSq = 1e-2;
constexpr double kMinRelativeGap = 1e-8;

// (log(1+e))^2 = sum_{n>=2} c_n e^n with c_n = (-1)^n 2 H_{n-1} / n.
const std::array<double, kSeriesTerms + 1>& series_coefficients() {
  static const auto table = [] {
    std::array<double, kSeriesTerms + 1> c{};
    double harmonic = 1.0;  // H_{n-1}
    for (int n = 2; n <= kSeriesTerms; ++n) {
      c[n] = (n % 2 == 0 ? 2.0 : -2.0) * harmonic / n;
      harmonic += 1.0 / n;
    }
    return c;
  }();
  return table;
}

Jet2 series_route(const Jet2& i1, const Jet2& i2, const Jet2& i3) {
  // Elementary symmetric functions of e_i = lambda_i - 1.
  const Jet2 s1 = i1 - 3.0;
  const Jet2 s2 = i2 - 2.0 * i1 + 3.0;
  const Jet2 s3 = i3 - i2 + i1 - 1.0;
  const auto& c = series_coefficients();

  std::array<Jet2, kSeriesTerms + 1> p;
  p[1] = s1;
  p[2] = s1 * p[1] - 2.0 * s2;
  p[3] = s1 * p[2] - s2 * p[1] + 3.0 * s3;
  for (int k = 4; k <= kSeriesTerms; ++k) p[k] = s1 * p[k - 1] - s2 * p[k - 2] + s3 * p[k - 3];

  // Horner-free summation, smallest terms first.
  Jet2 sum = Jet2::constant(0.0, i1.nvars());
  for (int n = kSeriesTerms; n >= 2; --n) sum += c[n] * p[n];
  return sum;
}

quad cubic(quad x, quad a1, quad a2, quad a3) { return ((x - a1) * x + a2) * x - a3; }
quad cubic_slope(quad x, quad a1, quad a2) { return (3 * x - 2 * a1) * x + a2; }

std::array<quad, 3> cubic_roots(quad a1, quad a2, quad a3) {
  // lambda^3 - a1 lambda^2 + a2 lambda - a3, shifted to t^3 + p t + q.
  const quad shift = a1 / 3;
  const quad p = a2 - a1 * a1 / 3;
  const quad q = -2 * a1 * a1 * a1 / 27 + a1 * a2 / 3 - a3;
  std::array<quad, 3> r{shift, shift, shift};
  const quad scale = 1 + a1 * a1;
  if (p > 1e-24Q * scale) throw DomainError("eigenvalues", "invariants admit complex eigenvalues");
  if (p < 0) {
    const quad m = 2 * sqrtq(-p / 3);
    quad arg = 3 * q / (p * m);
    if (fabsq(arg) > 1 + 1e-20Q) {
      throw DomainError("eigenvalues", "invariants admit complex eigenvalues");
    }
    arg = arg > 1 ? 1 : (arg < -1 ? -1 : arg);
    const quad theta = acosq(arg) / 3;
    const quad two_pi_3 = 2 * M_PIq / 3;
    for (int k = 0; k < 3; ++k) r[k] = shift + m * cosq(theta - k * two_pi_3);
  }
  for (auto& x : r) {
    for (int it = 0; it < 4; ++it) {
      const quad s = cubic_slope(x, a1, a2);
      if (s == 0) break;
      x -= cubic(x, a1, a2, a3) / s;
    }
  }
  std::sort(r.begin(), r.end(), [](quad a, quad b) { return a > b; });
  return r;
}

Jet2 eigen_route(const Jet2& i1, const Jet2& i2, const Jet2& i3) {
  const quad a1 = i1.value(), a2 = i2.value(), a3 = i3.value();
  const auto lam = cubic_roots(a1, a2, a3);
  if (lam[2] <= 0) throw DomainError("sum_log_sq", "non-positive eigenvalue");

  quad value = 0;
  for (quad l : lam) value += logq(l) * logq(l);
  const std::array<Jet2, 3> in{i1, i2, i3};
  if (i1.is_constant() && i2.is_constant() && i3.is_constant()) {
    return Jet2::constant(static_cast<double>(value), i1.nvars());
  }

  const quad gap = std::min(lam[0] - lam[1], lam[1] - lam[2]);
  if (gap < kMinRelativeGap * lam[0]) {
    throw DomainError("sum_log_sq", "coalescent eigenvalues, derivatives undefined");
  }

  quad g[3] = {0, 0, 0};
  quad h[6] = {0, 0, 0, 0, 0, 0};
  for (quad l : lam) {
    const quad slope = cubic_slope(l, a1, a2);
    const quad dp[3] = {-l * l, l, -1};
    const quad dpl[3] = {-2 * l, 1, 0};
    const quad pll = 6 * l - 2 * a1;
    quad dl[3];
    for (int k = 0; k < 3; ++k) dl[k] = -dp[k] / slope;
    const quad lg = logq(l);
    const quad f1 = 2 * lg / l;
    const quad f2 = 2 * (1 - lg) / (l * l);
    for (int k = 0; k < 3; ++k) {
      g[k] += f1 * dl[k];
      for (int m = k; m < 3; ++m) {
        const quad dkl = -(pll * dl[k] * dl[m] + dpl[m] * dl[k] + dpl[k] * dl[m]) / slope;
        h[Jet2::packed(k, m)] += f2 * dl[k] * dl[m] + f1 * dkl;
      }
    }
  }
  std::array<double, 3> gd{};
  std::array<double, 6> hd{};
  for (int k = 0; k < 3; ++k) gd[k] = static_cast<double>(g[k]);
  for (int k = 0; k < 6; ++k) hd[k] = static_cast<double>(h[k]);
  return Jet2::chain(in, static_cast<double>(value), gd, hd);
}

}  // namespace

std::array<double, 3> eigenvalues_from_invariants(double i1, double i2, double i3) {
  if (!(i3 > 0.0)) throw DomainError("eigenvalues", "I3 must be positive");
  const auto r = cubic_roots(i1, i2, i3);
  if (r[2] <= 0) throw DomainError("eigenvalues", "non-positive eigenvalue");
  return {static_cast<double>(r[0]), static_cast<double>(r[1]), static_cast<double>(r[2])};
}

Jet2 sum_log_sq(const Jet2& i1, const Jet2& i2, const Jet2& i3) {
  if (!(i3.value() > 0.0)) throw DomainError("sum_log_sq", "I3 must be positive");
  const double s1 = i1.value() - 3.0;
  const double s2 = i2.value() - 2.0 * i1.value() + 3.0;
  const double radius_sq = s1 * s1 - 2.0 * s2;
  if (radius_sq < kSeriesRadiusSq) return series_route(i1, i2, i3);
  return eigen_route(i1, i2, i3);
}

}  // namespace apsc
