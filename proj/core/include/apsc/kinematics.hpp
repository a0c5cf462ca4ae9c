#pragma once

#include <array>

#include "apsc/jet.hpp"

namespace apsc {

/// Dense row-major 3x3 matrix of deformation-gradient-like quantities.
struct Matrix3 {
  std::array<std::array<double, 3>, 3> m{};

  static Matrix3 identity();
  static Matrix3 zero() { return {}; }

  double& operator()(int i, int j) { return m[i][j]; }
  double operator()(int i, int j) const { return m[i][j]; }

  Matrix3 transpose() const;
  double trace() const;
  double det() const;
  /// Cofactor matrix from the explicit 2x2 minors; well defined for singular F.
  Matrix3 cofactor() const;
  /// Throws DomainError when det == 0.
  Matrix3 inverse() const;
  double frobenius_sq() const;

  friend Matrix3 operator*(const Matrix3& a, const Matrix3& b);
  friend Matrix3 operator+(const Matrix3& a, const Matrix3& b);
  friend Matrix3 operator-(const Matrix3& a, const Matrix3& b);
  friend Matrix3 operator*(double s, const Matrix3& a);
  friend bool operator==(const Matrix3&, const Matrix3&) = default;
};

struct InvariantTriple {
  double i1 = 3.0;
  double i2 = 3.0;
  double i3 = 1.0;
};

/// In-plane gradient (u,x1, u,x2) of an anti-plane shear height function.
struct APSGradient {
  double alpha = 0.0;
  double beta = 0.0;

  double gamma_sq() const { return alpha * alpha + beta * beta; }
};

/// F = [[1,0,0],[0,1,0],[alpha,beta,1]].
Matrix3 aps_deformation_gradient(const APSGradient& g);

/// F = [[1,0,0],[0,1,0],[u1,u2,1+u3]]; throws DomainError when 1 + u3 <= 0.
Matrix3 aps_plus_gradient(double u1, double u2, double u3);

/// Simple shear: identity with F(0,1) = gamma.
Matrix3 simple_shear_gradient(double gamma);

/// Invariants of B = F F^T. Throws DomainError when det F <= 0.
InvariantTriple invariants_of(const Matrix3& F);

/// Eigenvalues (lambda_plus, lambda_minus, 1) of B for simple shear by gamma,
/// in closed form and differentiated through the jet.
std::array<Jet2, 3> simple_shear_eigenvalues(const Jet2& gamma);

}  // namespace apsc
