#pragma once

#include <functional>

namespace apsc {

/// Point where `fails` switches from false (at lo) to true (at hi), to
/// within `tol`. Throws std::invalid_argument if the bracket is not a sign
/// change.
double bisect_threshold(const std::function<bool(double)>& fails, double lo, double hi,
                        double tol);

}  // namespace apsc
