#include "apsc/finite_diff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace apsc {

double default_fd_step(double x) { return 1e-4 * std::max(1.0, std::abs(x)); }

double fd_second_derivative(const std::function<double(double)>& f, double x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("fd_second_derivative: step must be positive");
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

double fd_second_derivative(const std::function<double(double)>& f, double x) {
  return fd_second_derivative(f, x, default_fd_step(x));
}

double fd_first_derivative(const std::function<double(double)>& f, double x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("fd_first_derivative: step must be positive");
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

double fd_first_derivative(const std::function<double(double)>& f, double x) {
  return fd_first_derivative(f, x, default_fd_step(x));
}

}  // namespace apsc
