#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace apsc {

/// Sample points R in (0, r_max] for the path checks: `n_linear` evenly
/// spaced points r_max*i/n_linear (i = 1..n_linear) merged with `n_log`
/// log-spaced points on [log_min, r_max]. Sorted, duplicates removed.
struct RGrid {
  double r_max = 10.0;
  int n_linear = 100;
  int n_log = 100;
  double log_min = 1e-3;
  std::vector<double> points;

  std::size_t size() const { return points.size(); }
  double operator[](std::size_t i) const { return points[i]; }
  std::string describe() const;
};

/// Throws std::invalid_argument for r_max <= log_min or counts below 2.
RGrid make_grid(double r_max = 10.0, int n_linear = 100, int n_log = 100, double log_min = 1e-3);

inline RGrid default_grid() { return make_grid(); }

}  // namespace apsc
