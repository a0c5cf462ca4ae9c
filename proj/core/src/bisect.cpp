#include "apsc/bisect.hpp"

#include <stdexcept>

namespace apsc {

double bisect_threshold(const std::function<bool(double)>& fails, double lo, double hi,
                        double tol) {
  if (!(lo < hi) || !(tol > 0.0)) throw std::invalid_argument("bisect: need lo < hi and tol > 0");
  if (fails(lo)) throw std::invalid_argument("bisect: predicate already true at lower end");
  if (!fails(hi)) throw std::invalid_argument("bisect: predicate false at upper end");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (fails(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace apsc
