#include "ekt/words/presentation.hpp"

#include <mutex>
#include <vector>

#include "ekt/error.hpp"

namespace ekt::words {

namespace {
constexpr Fuel kFuelStep = 64;
}

CeWordSet kernel_of_map(std::function<GpWord(const GpWord&)> f, AlgPresentation g1,
                        GpWord identity_label) {
  CeWordSet out;
  auto fn = std::make_shared<std::function<GpWord(const GpWord&)>>(std::move(f));
  auto pres = std::make_shared<AlgPresentation>(std::move(g1));
  auto id = std::make_shared<GpWord>(std::move(identity_label));
  out.member = [fn, pres, id](const GpWord& w, Fuel fuel) {
    return pres->in_kernel((*fn)(w), *id, fuel);
  };
  // Slot (i, j): test the i-th word at fuel (j+1)*step, emitting on the
  // first confirming fuel level so each member appears exactly once.
  out.enumerate = [fn, pres, id](std::uint64_t slot) -> std::optional<GpWord> {
    auto [i, j] = codec::unpair(Nat(static_cast<unsigned long>(slot)));
    GpWord w = index_word_gp(i);
    Fuel fuel = (codec::to_u64(j) + 1) * kFuelStep;
    if (pres->in_kernel((*fn)(w), *id, fuel) != Tri::Yes) return std::nullopt;
    if (j > 0 && pres->in_kernel((*fn)(w), *id, fuel - kFuelStep) == Tri::Yes)
      return std::nullopt;
    return w;
  };
  return out;
}

namespace {

// Enumeration cursor shared by the subgroup labeling: the n-th generator of
// H# is the n-th word emitted by the c.e. enumeration of H.
struct SubgroupMemo {
  CeWordSet h;
  Fuel stage_fuel;
  std::vector<GpWord> emitted;
  std::uint64_t next_slot = 0;
  std::mutex mu;

  GpWord nth(std::uint64_t n) {
    std::scoped_lock lock(mu);
    std::uint64_t scanned = 0;
    while (emitted.size() <= n) {
      if (scanned++ > stage_fuel)
        throw StagingError("subgroup_presentation: enumeration produced no new element in fuel");
      if (auto w = h.enumerate(next_slot++)) {
        emitted.push_back(*w);
        scanned = 0;
      }
    }
    return emitted[n];
  }
};

}  // namespace

SubgroupPresentation subgroup_presentation(AlgPresentation g, CeWordSet h, Fuel stage_fuel) {
  if (g.kind != AlgKind::group)
    throw Error("subgroup_presentation: group presentation required");
  auto memo = std::make_shared<SubgroupMemo>();
  memo->h = std::move(h);
  memo->stage_fuel = stage_fuel;
  memo->nth(0);  // staging check: H must be nonempty within fuel

  auto gp = std::make_shared<AlgPresentation>(std::move(g));
  auto include = [memo](const GpWord& w) {
    GpWord out;
    for (const Letter& l : w.letters) {
      if (!l.gen.fits_ulong_p()) throw Error("subgroup label: generator index too large");
      GpWord g_label = memo->nth(l.gen.get_ui());
      out = gp_concat(out, l.inv ? gp_inverse(g_label) : g_label);
    }
    return out;
  };

  SubgroupPresentation out;
  out.include = include;
  out.generator_label = [memo](const Nat& n) {
    if (!n.fits_ulong_p()) throw Error("subgroup generator index too large");
    return memo->nth(n.get_ui());
  };
  out.pres.kind = AlgKind::group;
  out.pres.label_map = [gp, include](const GpWord& w) { return gp->label_map(include(w)); };
  out.pres.kernel.mode = OracleMode::ce;
  out.pres.kernel.decide = [gp, include](const GpWord& a, const GpWord& b, Fuel fuel) {
    return gp->in_kernel(include(a), include(b), fuel);
  };
  return out;
}

ProductPresentation product_presentation(AlgPresentation s0, AlgPresentation s1) {
  if (s0.kind != s1.kind) throw Error("product_presentation: kind mismatch");
  const AlgKind kind = s0.kind;

  // sigma: generator index -> pair of component words.  For semigroups the
  // components range over nonempty words, for groups over all words.  The
  // interleaving uses rooted list codes (polynomial in the letter indices,
  // unlike the graded word_index bijection, so labels over large generator
  // codes stay representable).
  auto sigma = [kind](const Nat& n) -> std::pair<GpWord, GpWord> {
    auto [a, b] = codec::unpair(n);
    if (kind == AlgKind::semigroup)
      return {as_group_word(SgWord(codec::list_decode(a + 1))),
              as_group_word(SgWord(codec::list_decode(b + 1)))};
    return {index_word_gp(a), index_word_gp(b)};
  };
  auto sigma_inv = [kind](const GpWord& w0, const GpWord& w1) -> Nat {
    if (kind == AlgKind::semigroup)
      return codec::pair(codec::list_encode(as_semigroup_word(w0).gens) - 1,
                         codec::list_encode(as_semigroup_word(w1).gens) - 1);
    return codec::pair(word_index(w0), word_index(w1));
  };

  auto component = [sigma](const GpWord& w, int which) {
    GpWord out;
    for (const Letter& l : w.letters) {
      auto [c0, c1] = sigma(l.gen);
      GpWord c = which == 0 ? c0 : c1;
      out = gp_concat(out, l.inv ? gp_inverse(c) : c);
    }
    return out;
  };

  auto p0 = std::make_shared<AlgPresentation>(std::move(s0));
  auto p1 = std::make_shared<AlgPresentation>(std::move(s1));

  ProductPresentation out;
  out.proj0 = [component](const GpWord& w) { return component(w, 0); };
  out.proj1 = [component](const GpWord& w) { return component(w, 1); };
  out.pair_label = [sigma_inv](const GpWord& w0, const GpWord& w1) {
    GpWord w;
    w.letters.push_back({sigma_inv(w0, w1), false});
    return w;
  };
  out.pres.kind = kind;
  out.pres.label_map = [p0, p1, component](const GpWord& w) {
    return "(" + p0->label_map(component(w, 0)) + ", " + p1->label_map(component(w, 1)) + ")";
  };
  out.pres.kernel.mode = combine_modes(p0->kernel.mode, p1->kernel.mode);
  out.pres.kernel.decide = [p0, p1, component](const GpWord& a, const GpWord& b, Fuel fuel) {
    Tri r0 = p0->in_kernel(component(a, 0), component(b, 0), fuel);
    if (r0 == Tri::No) return Tri::No;
    Tri r1 = p1->in_kernel(component(a, 1), component(b, 1), fuel);
    if (r1 == Tri::No) return Tri::No;
    if (r0 == Tri::Yes && r1 == Tri::Yes) return Tri::Yes;
    return Tri::Unknown;
  };
  return out;
}

}  // namespace ekt::words
