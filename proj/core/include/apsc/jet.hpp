#pragma once

#include <array>
#include <span>

namespace apsc {

/// Second-order forward-mode jet in up to three independent variables.
///
/// Carries a value, its gradient and its Hessian through arithmetic. The
/// Hessian is stored as the packed upper triangle (00, 01, 02, 11, 12, 22),
/// so symmetry holds by construction.
class Jet2 {
public:
  static constexpr int kMaxVars = 3;

  constexpr Jet2() = default;
  constexpr Jet2(double value) : value_(value) {}  // NOLINT: constants promote implicitly

  /// The variable `index` (0-based) at `value`, in a space of `nvars` variables.
  static Jet2 variable(double value, int index, int nvars);
  /// A constant living in a space of `nvars` variables.
  static Jet2 constant(double value, int nvars);

  double value() const { return value_; }
  int nvars() const { return nvars_; }
  double d(int i) const { return grad_[i]; }
  double d2(int i, int j) const { return hess_[packed(i, j)]; }
  const std::array<double, 3>& grad() const { return grad_; }
  const std::array<double, 6>& hess_packed() const { return hess_; }

  /// True when every derivative slot is zero.
  bool is_constant() const;

  static constexpr int packed(int i, int j) {
    if (i > j) {
      const int t = i;
      i = j;
      j = t;
    }
    // rows: 0 -> {0,1,2}, 1 -> {3,4}, 2 -> {5}
    return i == 0 ? j : (i == 1 ? 2 + j : 5);
  }

  /// f(a) given f, f', f'' at a.value().
  static Jet2 unary(const Jet2& a, double f, double f1, double f2);

  /// f(a, b) given the value and first and second partials of f.
  static Jet2 binary(const Jet2& a, const Jet2& b, double f, double fa, double fb, double faa,
                     double fab, double fbb);

  /// f(in[0], in[1], in[2]) given the value, gradient and packed Hessian of f
  /// with respect to its three arguments.
  static Jet2 chain(std::span<const Jet2, 3> in, double f, const std::array<double, 3>& df,
                    const std::array<double, 6>& d2f);

  Jet2& operator+=(const Jet2& o);
  Jet2& operator-=(const Jet2& o);
  Jet2& operator*=(const Jet2& o);
  Jet2& operator/=(const Jet2& o);

private:
  double value_ = 0.0;
  std::array<double, 3> grad_{};
  std::array<double, 6> hess_{};
  int nvars_ = 1;
};

/// Jets for `values[0..2]`, the first `nvars` of them seeded as independent
/// variables and the rest held constant. Throws std::invalid_argument unless
/// 1 <= nvars <= 3.
std::array<Jet2, 3> seed(const std::array<double, 3>& values, int nvars);

Jet2 operator-(const Jet2& a);
Jet2 operator+(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a, const Jet2& b);
Jet2 operator*(const Jet2& a, const Jet2& b);
Jet2 operator/(const Jet2& a, const Jet2& b);

Jet2 exp(const Jet2& a);
Jet2 log(const Jet2& a);
Jet2 sqrt(const Jet2& a);
Jet2 pow(const Jet2& a, double p);
Jet2 pow(const Jet2& a, const Jet2& p);

/// Scalar helpers shared with the jet overloads so generic code can call
/// `apsc::log(x)` for either scalar type and get the same domain checks.
double exp(double a);
double log(double a);
double sqrt(double a);
double pow(double a, double p);

inline double value_of(double x) { return x; }
inline double value_of(const Jet2& x) { return x.value(); }

}  // namespace apsc
