#include "ekt/error.hpp"
#include "ekt/ktheory/ktheory.hpp"

namespace ekt::kth {

using words::as_group_word;
using words::GpWord;
using words::index_word_sg;

K0 k0(PresPtr a, Fuel kernel_fuel) {
  K0 out;
  out.d = build_D(a, kernel_fuel);
  out.g = grothendieck(out.d.sg, out.d.decidable ? out.d.invariant : nullptr, kernel_fuel / 8);
  return out;
}

Tri K0::cone_semidecide(const GpWord& w, Fuel fuel) const {
  // search for w' in D_omega with (w, gamma(w')) in the kernel
  auto target = g.value(w);
  if (target && d.a->info->realize_class) {
    // construct the witness class directly from the value
    auto r = d.a->info->realize_class(*target, 1);
    if (!r) return Tri::Unknown;  // the value is not a cone value
    SgWord cand = SgWord::single(
        codec::pair(Nat(static_cast<unsigned long>(r->first - 1)), r->second));
    auto v = d.invariant(cand);
    if (v && *v == *target && g.gp.kernel.decide(w, gamma_label(cand), 8) == Tri::Yes)
      return Tri::Yes;
    return Tri::Unknown;
  }
  Fuel spent = 0;
  for (Nat slot(0); spent < fuel; slot += 1) {
    ++spent;
    SgWord cand = index_word_sg(slot);
    if (target) {
      auto v = d.invariant(cand);
      if (!v || *v != *target) continue;
    }
    Fuel inner = fuel > spent ? (fuel - spent) / 4 + 1 : 1;
    Tri r = g.gp.kernel.decide(w, gamma_label(cand), inner);
    if (r == Tri::Yes) return Tri::Yes;
  }
  return Tri::Unknown;
}

GpWord K0::gamma_label(const SgWord& w) const { return g.gamma(w); }

Tri K0::cone_decide(const GpWord& w, Fuel fuel) const {
  if (g.decidable) {
    // zero class is positive; otherwise decide by the parallel searches
    if (g.gp.kernel.decide(w, GpWord{}, 8) == Tri::Yes) return Tri::Yes;
    for (Fuel budget = 64; budget <= fuel; budget *= 2) {
      if (cone_semidecide(w, budget) == Tri::Yes) return Tri::Yes;
      if (cone_semidecide(words::gp_inverse(w), budget) == Tri::Yes) return Tri::No;
    }
    return Tri::Unknown;
  }
  // c.e. path: alternate the two semidecisions; a confirmation of -w alone
  // cannot exclude the zero class, so only the positive side is conclusive.
  for (Fuel budget = 64; budget <= fuel; budget *= 2) {
    if (cone_semidecide(w, budget) == Tri::Yes) return Tri::Yes;
    if (cone_semidecide(words::gp_inverse(w), budget) == Tri::Yes &&
        g.gp.kernel.decide(w, GpWord{}, budget) == Tri::Yes)
      return Tri::Yes;
  }
  return Tri::Unknown;
}

std::optional<Rat> K0::to_rational(const GpWord& w) const { return g.value(w); }

std::optional<GpWord> K0::unit_label() const {
  if (!d.a->unit || !d.decidable || !d.a->info->mvn_invariant || !d.a->info->realize_class)
    return std::nullopt;
  auto unit_inv = d.a->info->mvn_invariant(1, *d.a->unit);
  if (!unit_inv) return std::nullopt;
  auto r = d.a->info->realize_class(*unit_inv, 1);
  if (!r) return std::nullopt;
  SgWord cand =
      SgWord::single(codec::pair(Nat(static_cast<unsigned long>(r->first - 1)), r->second));
  auto v = d.invariant(cand);
  if (!v || *v != *unit_inv) return std::nullopt;
  return g.gamma(cand);
}

}  // namespace ekt::kth
