#pragma once

#include <array>

#include "apsc/jet.hpp"

namespace apsc {

/// Eigenvalues of B recovered from its invariants, largest first.
/// Throws DomainError unless all three are real and positive.
std::array<double, 3> eigenvalues_from_invariants(double i1, double i2, double i3);

/// Sum of squared logarithms of the eigenvalues of B, as a function of the
/// invariants of B, with derivatives lifted into the invariant jets.
///
/// Close to the identity the sum is expanded in power sums of (lambda - 1),
/// which are polynomials in the invariants. Elsewhere the eigenvalues are
/// found in quad precision and differentiated implicitly; there, coalescent
/// eigenvalues throw DomainError if derivatives are requested.
Jet2 sum_log_sq(const Jet2& i1, const Jet2& i2, const Jet2& i3);

}  // namespace apsc
