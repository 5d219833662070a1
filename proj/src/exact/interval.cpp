#include "ekt/exact/interval.hpp"

#include "ekt/error.hpp"

namespace ekt::exact {

Ival::Ival(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
  if (lo > hi) throw Error("Ival: lo > hi");
}

Ival Ival::max_join(const Ival& a, const Ival& b) {
  return Ival(a.lo > b.lo ? a.lo : b.lo, a.hi > b.hi ? a.hi : b.hi);
}

Ival Ival::min_join(const Ival& a, const Ival& b) {
  return Ival(a.lo < b.lo ? a.lo : b.lo, a.hi < b.hi ? a.hi : b.hi);
}

Ival Ival::clamp_nonneg() const {
  Rat l = lo < 0 ? Rat(0) : lo;
  Rat h = hi < 0 ? Rat(0) : hi;
  return Ival(l, h);
}

}  // namespace ekt::exact
