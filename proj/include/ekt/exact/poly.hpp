#pragma once

#include <vector>

#include "ekt/exact/numeric.hpp"

namespace ekt::exact {

// Univariate polynomial over Q, coefficient vector c[0..deg], c[deg] != 0
// after normalization (the zero polynomial is the empty vector).
using Poly = std::vector<Rat>;

Poly poly_normalize(Poly p);
int poly_degree(const Poly& p);  // -1 for zero
Rat poly_eval(const Poly& p, const Rat& x);
Poly poly_derivative(const Poly& p);
// Euclidean remainder of a by b (b nonzero).
Poly poly_rem(const Poly& a, const Poly& b);
Poly poly_divexact_linear_power(const Poly& p, std::size_t m);  // p / x^m
Poly poly_gcd(Poly a, Poly b);  // monic gcd
Poly poly_squarefree_part(const Poly& p);

// Sturm chain of a squarefree polynomial.
std::vector<Poly> sturm_chain(const Poly& squarefree);
// Number of sign variations of the chain at x.
int sturm_variations(const std::vector<Poly>& chain, const Rat& x);
// Number of distinct roots in the half-open interval (a, b].
int sturm_count_roots(const std::vector<Poly>& chain, const Rat& a, const Rat& b);

}  // namespace ekt::exact
