#pragma once

#include <functional>

namespace apsc {

/// Default oracle step: 1e-4 * max(1, |x|).
double default_fd_step(double x);

/// Central second difference (f(x+h) - 2 f(x) + f(x-h)) / h^2. Throws
/// std::invalid_argument unless h > 0.
double fd_second_derivative(const std::function<double(double)>& f, double x, double h);
double fd_second_derivative(const std::function<double(double)>& f, double x);

/// Central first difference (f(x+h) - f(x-h)) / (2h).
double fd_first_derivative(const std::function<double(double)>& f, double x, double h);
double fd_first_derivative(const std::function<double(double)>& f, double x);

}  // namespace apsc
