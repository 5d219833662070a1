#include "ekt/codec.hpp"

#include <algorithm>

#include "ekt/error.hpp"

namespace ekt::codec {

using exact::GQ;
using exact::Rat;

Nat pair(const Nat& a, const Nat& b) {
  Nat s = a + b;
  return s * (s + 1) / 2 + b;
}

std::pair<Nat, Nat> unpair(const Nat& n) {
  // s = floor((sqrt(8n+1)-1)/2)
  Nat disc = 8 * n + 1;
  Nat root = exact::isqrt_floor(disc);
  Nat s = (root - 1) / 2;
  Nat tri = s * (s + 1) / 2;
  Nat b = n - tri;
  Nat a = s - b;
  return {a, b};
}

Nat triple(const Nat& a, const Nat& b, const Nat& c) { return pair(a, pair(b, c)); }

void untriple(const Nat& n, Nat& a, Nat& b, Nat& c) {
  auto [x, y] = unpair(n);
  a = x;
  auto [u, v] = unpair(y);
  b = u;
  c = v;
}

Nat list_encode(const std::vector<Nat>& xs) {
  Nat code = 0;
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) code = pair(*it, code) + 1;
  return code;
}

std::vector<Nat> list_decode(Nat n) {
  std::vector<Nat> xs;
  while (n > 0) {
    auto [h, t] = unpair(n - 1);
    xs.push_back(h);
    n = t;
  }
  return xs;
}

// Pairing-based coding of positive rationals: decode is total and
// surjective (effective lists may be non-injective), encode inverts it on
// reduced fractions with indices polynomial in the numerator and
// denominator sizes.
Rat positive_rat_decode(const Nat& n) {
  auto [a, b] = unpair(n);
  Rat q(a + 1, b + 1);
  q.canonicalize();
  return q;
}

Nat positive_rat_encode(const Rat& q) {
  if (q <= 0) throw Error("positive_rat_encode: nonpositive input");
  return pair(q.get_num() - 1, q.get_den() - 1);
}

Rat rat_decode(const Nat& n) {
  if (n == 0) return Rat(0);
  Nat m = n - 1;
  Nat half = m / 2;
  Rat q = positive_rat_decode(half);
  if (mpz_even_p(m.get_mpz_t()) != 0) return q;
  return -q;
}

Nat rat_encode(const Rat& q) {
  if (q == 0) return Nat(0);
  if (q > 0) return 2 * positive_rat_encode(q) + 1;
  return 2 * positive_rat_encode(-q) + 2;
}

GQ gq_decode(const Nat& n) {
  auto [a, b] = unpair(n);
  return GQ(rat_decode(a), rat_decode(b));
}

Nat gq_encode(const GQ& z) { return pair(rat_encode(z.re), rat_encode(z.im)); }

GQ gq_nonzero_decode(const Nat& n) { return gq_decode(n + 1); }

Nat gq_nonzero_encode(const GQ& z) {
  if (z.is_zero()) throw Error("gq_nonzero_encode: zero input");
  return gq_encode(z) - 1;
}

std::size_t fold_index(const Nat& x, std::size_t n) {
  Nat r = x % static_cast<unsigned long>(n);
  return 1 + static_cast<std::size_t>(r.get_ui());
}

std::uint64_t to_u64(const Nat& n) {
  if (!n.fits_ulong_p()) throw Error("index does not fit in 64 bits");
  return n.get_ui();
}

}  // namespace ekt::codec
