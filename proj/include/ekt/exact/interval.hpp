#pragma once

#include "ekt/exact/numeric.hpp"

namespace ekt::exact {

// Closed interval with rational endpoints, lo <= hi.
struct Ival {
  Rat lo, hi;

  Ival() : lo(0), hi(0) {}
  Ival(Rat l, Rat h);
  static Ival point(const Rat& x) { return Ival(x, x); }

  Rat width() const { return hi - lo; }
  Rat mid() const { return (lo + hi) / 2; }
  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  bool intersects(const Ival& o) const { return lo <= o.hi && o.lo <= hi; }
  bool subset_of(const Ival& o) const { return o.lo <= lo && hi <= o.hi; }

  friend Ival operator+(const Ival& a, const Ival& b) { return Ival(a.lo + b.lo, a.hi + b.hi); }
  friend Ival operator-(const Ival& a, const Ival& b) { return Ival(a.lo - b.hi, a.hi - b.lo); }

  // Pointwise max: hull of {max(x,y) : x in a, y in b}.
  static Ival max_join(const Ival& a, const Ival& b);
  static Ival min_join(const Ival& a, const Ival& b);

  Ival shift(const Rat& c) const { return Ival(lo + c, hi + c); }
  Ival widen(const Rat& eps) const { return Ival(lo - eps, hi + eps); }
  // Clamp below at 0 (norms are nonnegative).
  Ival clamp_nonneg() const;
};

}  // namespace ekt::exact
