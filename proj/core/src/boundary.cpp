#include "apsc/boundary.hpp"

#include <array>
#include <numbers>

namespace apsc {

BoundaryFn parse_boundary(const std::string& source, double amplitude, ParamTable params) {
  const Expr e = parse(source, Dialect::boundary());
  params.emplace("pi", std::numbers::pi);
  params.emplace("A", amplitude);
  e.require_bound(params);
  return [e, params](double x1, double x2) {
    const std::array<double, 2> v{x1, x2};
    return e.eval(std::span<const double>(v), params);
  };
}

BoundaryFn default_boundary(double amplitude) { return parse_boundary(kDefaultBoundary, amplitude); }

BoundaryFn affine_boundary(double c1, double c2, double c3) {
  return [=](double x1, double x2) { return c1 * x1 + c2 * x2 + c3; };
}

}  // namespace apsc
