#include "apsc/kinematics.hpp"

#include <cmath>
#include <string>

#include "apsc/error.hpp"

namespace apsc {

Matrix3 Matrix3::identity() {
  Matrix3 r;
  for (int i = 0; i < 3; ++i) r.m[i][i] = 1.0;
  return r;
}

Matrix3 Matrix3::transpose() const {
  Matrix3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
  return r;
}

double Matrix3::trace() const { return m[0][0] + m[1][1] + m[2][2]; }

double Matrix3::det() const {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Matrix3 Matrix3::cofactor() const {
  Matrix3 c;
  c.m[0][0] = m[1][1] * m[2][2] - m[1][2] * m[2][1];
  c.m[0][1] = m[1][2] * m[2][0] - m[1][0] * m[2][2];
  c.m[0][2] = m[1][0] * m[2][1] - m[1][1] * m[2][0];
  c.m[1][0] = m[0][2] * m[2][1] - m[0][1] * m[2][2];
  c.m[1][1] = m[0][0] * m[2][2] - m[0][2] * m[2][0];
  c.m[1][2] = m[0][1] * m[2][0] - m[0][0] * m[2][1];
  c.m[2][0] = m[0][1] * m[1][2] - m[0][2] * m[1][1];
  c.m[2][1] = m[0][2] * m[1][0] - m[0][0] * m[1][2];
  c.m[2][2] = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  return c;
}

Matrix3 Matrix3::inverse() const {
  const double d = det();
  if (d == 0.0) throw DomainError("Matrix3::inverse", "singular matrix");
  return (1.0 / d) * cofactor().transpose();
}

double Matrix3::frobenius_sq() const {
  double s = 0.0;
  for (const auto& row : m)
    for (double v : row) s += v * v;
  return s;
}

Matrix3 operator*(const Matrix3& a, const Matrix3& b) {
  Matrix3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r.m[i][j] += a.m[i][k] * b.m[k][j];
  return r;
}

Matrix3 operator+(const Matrix3& a, const Matrix3& b) {
  Matrix3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = a.m[i][j] + b.m[i][j];
  return r;
}

Matrix3 operator-(const Matrix3& a, const Matrix3& b) {
  Matrix3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = a.m[i][j] - b.m[i][j];
  return r;
}

Matrix3 operator*(double s, const Matrix3& a) {
  Matrix3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = s * a.m[i][j];
  return r;
}

Matrix3 aps_deformation_gradient(const APSGradient& g) {
  Matrix3 F = Matrix3::identity();
  F.m[2][0] = g.alpha;
  F.m[2][1] = g.beta;
  return F;
}

Matrix3 aps_plus_gradient(double u1, double u2, double u3) {
  if (!(1.0 + u3 > 0.0))
    throw DomainError("aps_plus_gradient", "1 + u3 = " + std::to_string(1.0 + u3) + " is not positive");
  Matrix3 F = Matrix3::identity();
  F.m[2][0] = u1;
  F.m[2][1] = u2;
  F.m[2][2] = 1.0 + u3;
  return F;
}

Matrix3 simple_shear_gradient(double gamma) {
  Matrix3 F = Matrix3::identity();
  F.m[0][1] = gamma;
  return F;
}

InvariantTriple invariants_of(const Matrix3& F) {
  const double d = F.det();
  if (!(d > 0.0))
    throw DomainError("invariants_of", "det F = " + std::to_string(d) + " is not positive");
  const Matrix3 B = F * F.transpose();
  // I2 = tr Cof B = |Cof F|^2; the latter avoids squaring B
  return {B.trace(), F.cofactor().frobenius_sq(), d * d};
}

std::array<Jet2, 3> simple_shear_eigenvalues(const Jet2& gamma) {
  // B = [[1+g^2, g], [g, 1]] (+ 1 on the axis): lambda^2 - (2+g^2) lambda + 1 = 0
  const Jet2 g2 = gamma * gamma;
  const Jet2 root = gamma * sqrt(4.0 + g2);
  const Jet2 plus = 0.5 * (2.0 + g2 + root);
  // lambda_minus = 1 / lambda_plus avoids cancellation for large gamma
  const Jet2 minus = 1.0 / plus;
  return {plus, minus, Jet2::constant(1.0, gamma.nvars())};
}

}  // namespace apsc
