#include "ekt/error.hpp"
#include "ekt/fd/fd.hpp"
#include "ekt/ktheory/ktheory.hpp"

namespace ekt::kth {

using cstar::amplify;
using cstar::scalar_presentation;
using cstar::suspend;
using cstar::unitize;
using exact::ExactMatrix;

namespace {

// Rank of the scalar part of the support projection of a D(A~)-generator.
std::size_t pi_rank(const PresPtr& au, const DPresentation& dau, const SgWord& w) {
  std::size_t n = dau.level(w);
  auto p = dau.support_point(w);
  ExactMatrix pm = au->info->pi_matrix(n, p ? *p : dau.support(w).approx(8));
  if (fd::is_exact_projection(pm)) return pm.rank();
  auto rounded = fd::spectral_round_to_projection(pm);
  if (rounded.exact) return rounded.exact->rank();
  // the trace of a 2^-12 approximant rounds to the integer rank
  exact::GQ t = rounded.approx(12).trace_sum();
  exact::Rat r = t.re + exact::Rat(1, 2);
  exact::Int rank = r.get_num() / r.get_den();
  if (!rank.fits_ulong_p()) throw Error("pi_rank: rank out of range");
  return rank.get_ui();
}

}  // namespace

K0Nonunital k0_nonunital(PresPtr a, Fuel kernel_fuel, Fuel stage_fuel) {
  K0Nonunital out;
  out.unitized = unitize(a);
  if (!out.unitized->info->pi_matrix)
    throw Error("k0_nonunital: the unitization lacks a scalar-part map");
  out.ktilde = k0(out.unitized, kernel_fuel);
  out.kc = k0(scalar_presentation(), kernel_fuel);

  // D(pi): D(A~) -> D(C) by the rank of the scalar part.
  PresPtr au = out.unitized;
  auto dau = std::make_shared<DPresentation>(out.ktilde.d);
  PresPtr c = out.kc.d.a;
  auto d_pi = [au, dau, c](const SgWord& w) -> SgWord {
    std::vector<Nat> gens;
    for (const Nat& g : w.gens) {
      std::size_t r = pi_rank(au, *dau, SgWord::single(g));
      auto loc = c->info->realize_class(Rat(static_cast<long>(r)), 1);
      if (!loc) throw Error("k0_nonunital: rank class not realizable");
      gens.push_back(codec::pair(Nat(static_cast<unsigned long>(loc->first - 1)), loc->second));
    }
    return SgWord(std::move(gens));
  };

  out.k0_pi = G_of_map(out.ktilde.g, out.kc.g, d_pi);

  auto k0_pi = out.k0_pi;
  auto kc_pres = std::make_shared<words::AlgPresentation>(out.kc.g.gp);
  out.kernel_set = words::kernel_of_map([k0_pi](const GpWord& w) { return k0_pi(w); }, *kc_pres,
                                        GpWord{});
  out.sub = words::subgroup_presentation(out.ktilde.g.gp, out.kernel_set, stage_fuel);
  return out;
}

K0Nonunital k1(PresPtr a, Fuel kernel_fuel, Fuel stage_fuel) {
  return k0_nonunital(suspend(a), kernel_fuel, stage_fuel);
}

}  // namespace ekt::kth
