#pragma once

#include <gmpxx.h>

#include <string>

namespace ekt::exact {

using Int = mpz_class;
using Rat = mpq_class;

// 2^e for any integer e.
Rat pow2(long e);

// floor(sqrt(n)), n >= 0.
Int isqrt_floor(const Int& n);

// True iff x is the square of a rational; if so and root != nullptr,
// *root is set to the nonnegative square root.
bool is_perfect_square(const Rat& x, Rat* root = nullptr);

// Outward rational bounds on sqrt(x), x >= 0, with granularity <= 2^-g.
void sqrt_bounds(const Rat& x, long g, Rat& lo, Rat& hi);

// Rational upper bound on sqrt(x), granularity 2^-g.
Rat sqrt_upper(const Rat& x, long g);
Rat sqrt_lower(const Rat& x, long g);

std::string rat_to_string(const Rat& x);

}  // namespace ekt::exact
