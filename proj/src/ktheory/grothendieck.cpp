#include "ekt/error.hpp"
#include "ekt/ktheory/ktheory.hpp"

namespace ekt::kth {

using words::AlgKind;
using words::as_group_word;
using words::as_semigroup_word;
using words::gp_concat;
using words::gp_inverse;
using words::index_word_sg;
using words::OracleMode;

namespace {

SgWord concat_opt(const std::optional<SgWord>& a, const std::optional<SgWord>& b) {
  if (a && b) return a->concat(*b);
  if (a) return *a;
  if (b) return *b;
  throw Error("concat_opt: both empty");
}

std::optional<SgWord> append_opt(std::optional<SgWord> acc, const SgWord& w) {
  if (!acc) return w;
  return acc->concat(w);
}

}  // namespace

GrothendieckPresentation grothendieck(AlgPresentation s,
                                      std::function<std::optional<Rat>(const SgWord&)> invariant,
                                      Fuel z_fuel) {
  if (s.kind != AlgKind::semigroup)
    throw Error("grothendieck: semigroup presentation required");
  GrothendieckPresentation out;
  out.pairs = words::product_presentation(s, s);
  auto sp = std::make_shared<AlgPresentation>(std::move(s));
  auto pairs = std::make_shared<words::ProductPresentation>(out.pairs);
  auto invp = invariant ? std::make_shared<std::function<std::optional<Rat>(const SgWord&)>>(
                              std::move(invariant))
                        : nullptr;

  out.gamma = [pairs](const SgWord& a) {
    SgWord a0 = index_word_sg(Nat(0));  // the x_0 label
    return pairs->pair_label(as_group_word(a), as_group_word(a0));
  };

  auto canonical_pair =
      [pairs](const GpWord& w) -> std::pair<std::optional<SgWord>, std::optional<SgWord>> {
    std::optional<SgWord> pos, neg;
    for (const words::Letter& l : w.letters) {
      GpWord single;
      single.letters.push_back({l.gen, false});
      SgWord c0 = as_semigroup_word(pairs->proj0(single));
      SgWord c1 = as_semigroup_word(pairs->proj1(single));
      if (!l.inv) {
        pos = append_opt(pos, c0);
        neg = append_opt(neg, c1);
      } else {
        pos = append_opt(pos, c1);
        neg = append_opt(neg, c0);
      }
    }
    return {pos, neg};
  };
  out.canonical_pair = canonical_pair;

  if (invp) {
    out.value = [canonical_pair, invp](const GpWord& w) -> std::optional<Rat> {
      auto [pos, neg] = canonical_pair(w);
      Rat v(0);
      if (pos) {
        auto a = (*invp)(*pos);
        if (!a) return std::nullopt;
        v += *a;
      }
      if (neg) {
        auto b = (*invp)(*neg);
        if (!b) return std::nullopt;
        v -= *b;
      }
      return v;
    };
  } else {
    out.value = [](const GpWord&) { return std::nullopt; };
  }

  out.decidable = invp != nullptr && sp->kernel.mode == OracleMode::computable;
  out.gp.kind = AlgKind::group;
  auto value = out.value;
  out.gp.label_map = [value](const GpWord& w) {
    auto v = value(w);
    return v ? "[" + v->get_str() + "]" : std::string("[difference class]");
  };
  out.gp.kernel.mode = out.decidable ? OracleMode::computable : OracleMode::ce;
  Fuel default_z_fuel = z_fuel;
  out.gp.kernel.decide = [sp, canonical_pair, value, default_z_fuel](
                             const GpWord& wa, const GpWord& wb, Fuel fuel) -> Tri {
    // exact decision through the complete additive invariant
    {
      auto va = value(wa), vb = value(wb);
      if (va && vb) return *va == *vb ? Tri::Yes : Tri::No;
    }
    auto [p1, n1] = canonical_pair(wa);
    auto [p2, n2] = canonical_pair(wb);
    // [(P1,N1)] = [(P2,N2)] iff P1 + N2 + z ~ P2 + N1 + z for some z
    bool l_empty = !p1 && !n2, r_empty = !p2 && !n1;
    if (l_empty && r_empty) return Tri::Yes;
    if (!l_empty && !r_empty) {
      Tri direct = sp->in_kernel(as_group_word(concat_opt(p1, n2)),
                                 as_group_word(concat_opt(p2, n1)), fuel);
      if (direct == Tri::Yes) return Tri::Yes;
    }
    Fuel budget = fuel > 0 ? fuel : default_z_fuel;
    for (Fuel i = 0; i < budget; ++i) {
      SgWord z = index_word_sg(Nat(static_cast<unsigned long>(i)));
      SgWord left = z, right = z;
      if (!l_empty) left = concat_opt(p1, n2).concat(z);
      if (!r_empty) right = concat_opt(p2, n1).concat(z);
      if (sp->in_kernel(as_group_word(left), as_group_word(right), fuel) == Tri::Yes)
        return Tri::Yes;
    }
    return Tri::Unknown;
  };
  return out;
}

std::function<GpWord(const GpWord&)> universal_map(const GrothendieckPresentation& g,
                                                   std::function<GpWord(const SgWord&)> phi) {
  auto cp = g.canonical_pair;
  return [cp, phi](const GpWord& w) {
    auto [pos, neg] = cp(w);
    GpWord out;
    if (pos) out = gp_concat(out, phi(*pos));
    if (neg) out = gp_concat(out, gp_inverse(phi(*neg)));
    return out;
  };
}

std::function<GpWord(const GpWord&)> G_of_map(const GrothendieckPresentation& g0,
                                              const GrothendieckPresentation& g1,
                                              std::function<SgWord(const SgWord&)> phi) {
  auto cp = g0.canonical_pair;
  auto gamma1 = g1.gamma;
  return [cp, gamma1, phi](const GpWord& w) {
    auto [pos, neg] = cp(w);
    GpWord out;
    if (pos) out = gp_concat(out, gamma1(phi(*pos)));
    if (neg) out = gp_concat(out, gp_inverse(gamma1(phi(*neg))));
    return out;
  };
}

}  // namespace ekt::kth
