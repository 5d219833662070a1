#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ekt/exact/gaussian.hpp"
#include "ekt/exact/numeric.hpp"

namespace ekt::codec {

using Nat = exact::Int;

// Cantor pairing: a bijection N^2 <-> N with pair(0,0) = 0.
Nat pair(const Nat& a, const Nat& b);
std::pair<Nat, Nat> unpair(const Nat& n);

// Fixed bijection N <-> N^3 used for matrix point codes:
// triple(a,b,c) = pair(a, pair(b,c)).
Nat triple(const Nat& a, const Nat& b, const Nat& c);
void untriple(const Nat& n, Nat& a, Nat& b, Nat& c);

// Rooted list code: bijection between N and finite sequences of N.
// code([]) = 0, code(h:t) = pair(h, code(t)) + 1.
Nat list_encode(const std::vector<Nat>& xs);
std::vector<Nat> list_decode(Nat n);

// Calkin-Wilf bijection N <-> positive rationals.
exact::Rat positive_rat_decode(const Nat& n);
Nat positive_rat_encode(const exact::Rat& q);

// Bijection N <-> Q: 0 -> 0, 2k+1 -> +cw(k), 2k+2 -> -cw(k).
exact::Rat rat_decode(const Nat& n);
Nat rat_encode(const exact::Rat& q);

// Bijection N <-> Q(i) via Cantor pairing of the parts.
exact::GQ gq_decode(const Nat& n);
Nat gq_encode(const exact::GQ& z);

// Bijection N <-> Q(i) \ {0}.
exact::GQ gq_nonzero_decode(const Nat& n);
Nat gq_nonzero_encode(const exact::GQ& z);

// Remainder-based index folding from the matrix point coding:
// 1 + rem(x, n), giving a value in {1, ..., n}.
std::size_t fold_index(const Nat& x, std::size_t n);

std::uint64_t to_u64(const Nat& n);

}  // namespace ekt::codec
