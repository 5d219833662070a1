#pragma once

#include <utility>

#include "ekt/exact/interval.hpp"
#include "ekt/exact/matrix.hpp"

namespace ekt::exact {

// Certified operator (spectral) norm: returns an interval containing ||M||
// of width <= 2^-k.  Exact characteristic polynomial of M*M, Sturm isolation
// of the largest root, bisected square root; no floating point anywhere.
Ival certified_opnorm(const ExactMatrix& m, long k);

// Cheap certified upper bound: min(||M||_F, ||M||_1) rounded outward.
Rat opnorm_upper_cheap(const ExactMatrix& m);
// Cheap certified lower bound: max entry modulus rounded inward.
Rat opnorm_lower_cheap(const ExactMatrix& m);

// (||M||_max lower-collapsed, ||M||_1 upper-collapsed): the first value is a
// rational lower bound on the max entry modulus (exact when that modulus is
// rational), the second a rational upper bound on the sum of entry moduli
// (exact when all moduli are rational), so that
//   norm_bounds.first <= ||M|| <= norm_bounds.second.
std::pair<Rat, Rat> norm_bounds(const ExactMatrix& m);

// Normalized trace: (sum of diagonal entries) / dimension.  Square input.
GQ trace_exact(const ExactMatrix& m);

}  // namespace ekt::exact
