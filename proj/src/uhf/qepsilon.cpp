#include "ekt/error.hpp"
#include "ekt/uhf/uhf.hpp"

namespace ekt::uhf {

Tri QEpsilon::member(const Rat& x, std::size_t stage_fuel, std::size_t* witness) const {
  Rat r = x;
  r.canonicalize();
  const Nat den = r.get_den();
  if (den == 1) {
    if (witness) *witness = 0;
    return Tri::Yes;
  }
  for (std::size_t j = 0; j < stage_fuel; ++j) {
    if (eps_.stage_dim(j) % den == 0) {
      if (witness) *witness = j;
      return Tri::Yes;
    }
  }
  return Tri::Unknown;
}

QEpsilonElement QEpsilon::add(const QEpsilonElement& a, const QEpsilonElement& b) {
  QEpsilonElement out;
  out.value = a.value + b.value;
  out.value.canonicalize();
  if (a.stage && b.stage) out.stage = std::max(*a.stage, *b.stage);
  return out;
}

QEpsilonElement QEpsilon::negate(const QEpsilonElement& a) {
  QEpsilonElement out;
  out.value = -a.value;
  out.stage = a.stage;
  return out;
}

int QEpsilon::compare(const QEpsilonElement& a, const QEpsilonElement& b) {
  if (a.value < b.value) return -1;
  if (a.value > b.value) return 1;
  return 0;
}

}  // namespace ekt::uhf
