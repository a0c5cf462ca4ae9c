#pragma once

#include <functional>
#include <string>

#include "apsc/expr.hpp"

namespace apsc {

/// Prescribed height u(x1, x2) on the boundary.
using BoundaryFn = std::function<double(double, double)>;

/// Default non-affine datum (an artifact choice): A cos(2 pi x1) cos(2 pi x2).
inline constexpr const char* kDefaultBoundary = "A*cos(2*pi*x1)*cos(2*pi*x2)";
inline constexpr double kDefaultAmplitude = 0.25;

/// Boundary expression in x1, x2 (sin and cos allowed). `pi` is bound
/// automatically; `A` defaults to `amplitude` unless `params` sets it.
BoundaryFn parse_boundary(const std::string& source, double amplitude = kDefaultAmplitude,
                          ParamTable params = {});

BoundaryFn default_boundary(double amplitude = kDefaultAmplitude);

BoundaryFn affine_boundary(double c1, double c2, double c3);

}  // namespace apsc
