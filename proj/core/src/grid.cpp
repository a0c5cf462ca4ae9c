#include "apsc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace apsc {

RGrid make_grid(double r_max, int n_linear, int n_log, double log_min) {
  if (!(log_min > 0.0) || !(r_max > log_min))
    throw std::invalid_argument("grid: need 0 < log_min < r_max");
  if (n_linear < 2 || n_log < 2) throw std::invalid_argument("grid: need at least 2 points per family");
  RGrid g;
  g.r_max = r_max;
  g.n_linear = n_linear;
  g.n_log = n_log;
  g.log_min = log_min;
  for (int i = 1; i <= n_linear; ++i) g.points.push_back(r_max * i / n_linear);
  const double a = std::log(log_min), b = std::log(r_max);
  for (int i = 0; i < n_log; ++i) {
    const double r = i == n_log - 1 ? r_max : std::exp(a + (b - a) * i / (n_log - 1));
    g.points.push_back(r);
  }
  std::sort(g.points.begin(), g.points.end());
  g.points.erase(std::unique(g.points.begin(), g.points.end()), g.points.end());
  return g;
}

std::string RGrid::describe() const {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu points on (0, %g]: %d linear + %d log from %g", points.size(),
                r_max, n_linear, n_log, log_min);
  return buf;
}

}  // namespace apsc
