#include "ekt/cstar/presentation.hpp"

#include <map>
#include <mutex>

#include "ekt/error.hpp"

namespace ekt::cstar {

using exact::pow2;

NormMode combine_norm_modes(NormMode a, NormMode b) {
  if (a == NormMode::computable) return b;
  if (b == NormMode::computable) return a;
  if (a == b) return a;
  throw Error("combine_norm_modes: left-c.e. and right-c.e. modes do not combine");
}

Element CPresentation::eval(const StarPoly& p) const {
  Element acc = zero;
  for (const Term& t : p.terms) {
    Element prod;
    for (const MonoLetter& l : t.mono) {
      Element g = special(l.gen);
      if (l.star) g = g.adjoint();
      prod = prod.valid() ? prod.mul(g) : g;
    }
    acc = acc.add(prod.scale(t.coeff));
  }
  return acc;
}

Element CPresentation::one() const {
  if (!unit) throw Error("presentation has no unit point");
  return eval(*unit);
}

PresPtr make_custom_presentation(NormMode mode,
                                 std::function<Ival(const StarPoly&, long)> norm_oracle,
                                 std::optional<StarPoly> unit) {
  auto ctx = std::make_shared<SymbolicElem::Context>();
  ctx->norm = std::move(norm_oracle);
  auto pres = std::make_shared<CPresentation>();
  pres->mode = mode;
  pres->special = [ctx](const Nat& g) { return SymbolicElem::make(ctx, StarPoly::generator(g)); };
  pres->zero = SymbolicElem::make(ctx, StarPoly::zero());
  pres->unit = std::move(unit);
  pres->info->kind = InstanceInfo::Kind::custom;
  return pres;
}

struct PointHandle::Checked {
  std::mutex mu;
  std::map<long, StarPoly> memo;
  long verified_to = -1;
};

PointHandle::PointHandle(PresPtr pres, std::function<StarPoly(long)> approx,
                         std::optional<StarPoly> exact)
    : pres_(std::move(pres)),
      approx_(std::move(approx)),
      exact_(std::move(exact)),
      checked_(std::make_shared<Checked>()) {}

PointHandle PointHandle::exact_point(PresPtr pres, StarPoly p) {
  StarPoly copy = p;
  return PointHandle(
      std::move(pres), [copy](long) { return copy; }, std::move(p));
}

StarPoly PointHandle::approx(long k) const {
  if (!pres_) throw Error("PointHandle: empty handle");
  if (exact_) return *exact_;
  std::scoped_lock lock(checked_->mu);
  auto at = [&](long j) -> const StarPoly& {
    auto it = checked_->memo.find(j);
    if (it == checked_->memo.end()) it = checked_->memo.emplace(j, approx_(j)).first;
    return it->second;
  };
  for (long j = 0; j < k; ++j) {
    if (j <= checked_->verified_to) continue;
    // Certified violation only: the lower bound must exceed the allowance.
    Ival d = pres_->norm(at(j) - at(j + 1), j + 4);
    if (d.lo > pow2(-j) + pow2(-j - 1))
      throw CauchyViolation("computable point violates its Cauchy contract at k=" +
                            std::to_string(j));
    checked_->verified_to = j;
  }
  return at(k);
}

PointHandle computable_point(PresPtr pres, std::function<Nat(long)> approximator) {
  auto fn = [pres, approximator](long k) { return pres->rational_point(approximator(k)); };
  return PointHandle(pres, fn);
}

StarPoly enumerate_rational_point(const CPresentation& pres, const Nat& index) {
  return pres.rational_point(index);
}

}  // namespace ekt::cstar
