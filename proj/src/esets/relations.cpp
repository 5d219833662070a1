#include "ekt/error.hpp"
#include "ekt/esets/esets.hpp"

namespace ekt::esets {

using exact::pow2;

RelationSystem projection_relations() {
  RelationSystem rel;
  rel.arity = 1;
  rel.tag = RelTag::projection;
  rel.sys_size = 1;
  // x* - x
  RelPoly herm;
  herm.terms.push_back({GQ::integer(1), {{0, true}}});
  herm.terms.push_back({GQ::integer(-1), {{0, false}}});
  // x x - x
  RelPoly idem;
  idem.terms.push_back({GQ::integer(1), {{0, false}, {0, false}}});
  idem.terms.push_back({GQ::integer(-1), {{0, false}}});
  rel.polys = {herm, idem};
  rel.bounds = {Rat(1)};
  rel.modulus = [](long k) { return k + 3; };
  return rel;
}

RelationSystem matrix_unit_relations(std::size_t n, bool unital, const StarPoly& unit_point) {
  if (n == 0) throw Error("matrix_unit_relations: n must be positive");
  RelationSystem rel;
  rel.arity = n * n;
  rel.tag = unital ? RelTag::unital_matrix_units : RelTag::matrix_units;
  rel.sys_size = n;
  auto var = [n](std::size_t r, std::size_t s) { return r * n + s; };
  // adjoint symmetry: x_rs* - x_sr
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s) {
      RelPoly p;
      p.terms.push_back({GQ::integer(1), {{var(r, s), true}}});
      p.terms.push_back({GQ::integer(-1), {{var(s, r), false}}});
      rel.polys.push_back(std::move(p));
    }
  // multiplication table: x_rs x_uv - delta_{s,u} x_rv
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) {
          RelPoly p;
          p.terms.push_back({GQ::integer(1), {{var(r, s), false}, {var(u, v), false}}});
          if (s == u) p.terms.push_back({GQ::integer(-1), {{var(r, v), false}}});
          rel.polys.push_back(std::move(p));
        }
  if (unital) {
    RelPoly p;
    for (std::size_t r = 0; r < n; ++r) p.terms.push_back({GQ::integer(1), {{var(r, r), false}}});
    p.affine = unit_point.scaled(GQ::integer(-1));
    rel.polys.push_back(std::move(p));
  }
  rel.bounds.assign(n * n, Rat(1));
  long shift = 3;
  {
    std::size_t v = 1;
    while (v < n + 1) {
      v <<= 1;
      ++shift;
    }
    shift -= 1;  // 3 + ceil(log2(n+1))
  }
  long total = shift + 1;
  rel.modulus = [total](long k) { return k + total; };
  return rel;
}

Ival relation_residual(const PresPtr& pres, const RelationSystem& rel,
                       const std::vector<StarPoly>& tuple, long k) {
  if (tuple.size() != rel.arity) throw Error("relation_residual: arity mismatch");
  std::vector<Element> vars;
  vars.reserve(tuple.size());
  for (const StarPoly& p : tuple) vars.push_back(pres->eval(p));

  Ival out = Ival::point(Rat(0));
  for (const RelPoly& poly : rel.polys) {
    Element acc;
    for (const auto& term : poly.terms) {
      Element prod;
      for (const auto& l : term.mono) {
        Element v = vars.at(l.var);
        if (l.star) v = v.adjoint();
        prod = prod.valid() ? prod.mul(v) : v;
      }
      prod = prod.scale(term.coeff);
      acc = acc.valid() ? acc.add(prod) : prod;
    }
    if (poly.affine) {
      Element aff = pres->eval(*poly.affine);
      acc = acc.valid() ? acc.add(aff) : aff;
    }
    if (!acc.valid()) continue;
    out = Ival::max_join(out, acc.norm(k));
  }
  for (std::size_t j = 0; j < rel.arity; ++j) {
    Ival excess = (vars[j].norm(k) - Ival::point(rel.bounds[j])).clamp_nonneg();
    out = Ival::max_join(out, excess);
  }
  return out;
}

CeClosedSet ce_closed_from_relations(PresPtr pres, const RelationSystem& rel) {
  auto relp = std::make_shared<RelationSystem>(rel);
  CeClosedSet out;
  out.pres = pres;
  out.arity = rel.arity;
  out.balls = [pres, relp](const Nat& slot) -> std::optional<RationalBall> {
    const bool hint_path = mpz_odd_p(slot.get_mpz_t()) != 0;
    Nat body = slot / 2;
    auto [idx, kk] = codec::unpair(body);
    long k = 2 + static_cast<long>(codec::fold_index(kk, 12)) - 1;  // radii 2^-2 .. 2^-13
    long g = relp->modulus(k);

    std::vector<StarPoly> tuple;
    if (hint_path) {
      if (!pres->info->relation_hints) return std::nullopt;
      auto hinted = pres->info->relation_hints(relp->tag, 1, relp->sys_size, idx);
      if (!hinted || hinted->size() != relp->arity) return std::nullopt;
      tuple = std::move(*hinted);
    } else {
      std::vector<Nat> codes = codec::list_decode(idx);
      if (codes.size() != relp->arity) return std::nullopt;
      for (const Nat& c : codes) tuple.push_back(cstar::starpoly_decode(c));
    }
    Ival residual = relation_residual(pres, *relp, tuple, g + 2);
    if (residual.hi < pow2(-g)) return RationalBall(tuple_center(tuple), pow2(-k));
    return std::nullopt;
  };
  return out;
}

}  // namespace ekt::esets
