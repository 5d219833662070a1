#include <sstream>

#include "ekt/error.hpp"
#include "ekt/ktheory/ktheory.hpp"

namespace ekt::kth {

using cstar::amplify;
using cstar::Element;
using esets::ce_closed_from_relations;
using esets::find_point_in_intersection;
using esets::mvn_semidecide;
using esets::pad_matrix_point;
using esets::pad_point_level;
using esets::projection_relations;

namespace {

bool element_is_projection(const Element& e) {
  return e.adjoint().sub(e).exactly_zero() && e.mul(e).sub(e).exactly_zero();
}

// Shifts a point of M_m(A#) to the diagonal block at offset `off` of
// M_total(A#); level-1 points are A#-coded.
StarPoly shift_matrix_point(const StarPoly& p, std::size_t m, std::size_t total,
                            std::size_t off) {
  if (total == 1) return p;
  if (m == 1) return cstar::amplify_inject(p, total, off + 1, off + 1);
  StarPoly out;
  for (const cstar::Term& t : p.terms) {
    cstar::Term u;
    u.coeff = t.coeff;
    for (const cstar::MonoLetter& l : t.mono) {
      Nat g, a, b;
      codec::untriple(l.gen, g, a, b);
      std::size_t r = codec::fold_index(a, m) - 1 + off, c = codec::fold_index(b, m) - 1 + off;
      u.mono.push_back(cstar::MonoLetter{
          codec::triple(g, Nat(static_cast<long>(r)), Nat(static_cast<long>(c))), l.star});
    }
    out.terms.push_back(std::move(u));
  }
  return out.normalized();
}

}  // namespace

ProjectionList enumerate_projections(PresPtr a, Fuel per_point_fuel) {
  ProjectionList out;
  out.a = a;
  auto info = a->info;
  if (info->projection_points) {
    auto seed_point = [a, info](std::size_t n, const Nat& slot) -> std::optional<StarPoly> {
      auto p = info->projection_points(n, slot);
      if (!p) return std::nullopt;
      PresPtr level_pres = n == 1 ? a : amplify(a, n);
      if (!element_is_projection(level_pres->eval(*p))) return std::nullopt;
      return p;
    };
    out.point = seed_point;
    out.handle = [a, seed_point](std::size_t n, const Nat& slot) {
      PresPtr pres_n = n == 1 ? a : amplify(a, n);
      auto p = seed_point(n, slot);
      return PointHandle::exact_point(pres_n, p ? *p : StarPoly::zero());
    };
    if (info->mvn_invariant) {
      out.invariant = [info, seed_point](std::size_t n, const Nat& slot) -> std::optional<Rat> {
        auto p = seed_point(n, slot);
        if (!p) return Rat(0);  // empty slots hold the zero projection
        return info->mvn_invariant(n, *p);
      };
    }
    return out;
  }
  // Generic path: the k-th ball of the projection S_0 stream with diameter
  // < 1/2, refined by the nested-ball search; empty slots and
  // failed searches fall back to the zero projection.
  out.point = [](std::size_t, const Nat&) -> std::optional<StarPoly> { return std::nullopt; };
  out.handle = [a, per_point_fuel](std::size_t n, const Nat& slot) {
    PresPtr pres_n = n == 1 ? a : amplify(a, n);
    esets::CeClosedSet proj = ce_closed_from_relations(pres_n, projection_relations());
    auto ball = proj.balls(slot);
    if (!ball || ball->radius >= exact::Rat(1, 4))
      return PointHandle::exact_point(pres_n, StarPoly::zero());
    esets::CeOpenSet u;
    u.pres = pres_n;
    esets::RationalBall b = *ball;
    u.balls = [b](const Nat& s) -> std::optional<esets::RationalBall> {
      if (s == 0) return b;
      return std::nullopt;
    };
    esets::IntersectionResult found = find_point_in_intersection(u, proj, 4, per_point_fuel);
    if (!found.point) return PointHandle::exact_point(pres_n, StarPoly::zero());
    return *found.point;
  };
  return out;
}

DPresentation build_D(PresPtr a, Fuel kernel_fuel) {
  DPresentation out;
  out.a = a;
  ProjectionList plist = enumerate_projections(a);
  auto plistp = std::make_shared<ProjectionList>(plist);

  // generator index g = <m, slot>: the slot-th projection of M_{m+1}(A)
  auto gen_level = [](const Nat& g) -> std::pair<std::size_t, Nat> {
    auto [m, s] = codec::unpair(g);
    if (!m.fits_ulong_p()) throw Error("D generator level too large");
    return {m.get_ui() + 1, s};
  };

  auto level_of = [gen_level](const SgWord& w) {
    std::size_t total = 0;
    for (const Nat& g : w.gens) total += gen_level(g).first;
    return total;
  };
  out.level = level_of;

  auto support_point = [plistp, gen_level,
                        level_of](const SgWord& w) -> std::optional<StarPoly> {
    std::size_t total = level_of(w), off = 0;
    StarPoly sum;
    for (const Nat& g : w.gens) {
      auto [m, s] = gen_level(g);
      auto p = plistp->point ? plistp->point(m, s) : std::nullopt;
      if (!p && plistp->invariant) p = StarPoly::zero();
      if (!p) return std::nullopt;
      if (!p->is_zero_poly()) sum = sum + shift_matrix_point(*p, m, total, off);
      off += m;
    }
    return sum;
  };
  out.support_point = support_point;

  out.support = [a, plistp, gen_level, level_of, support_point](const SgWord& w) {
    std::size_t total = level_of(w);
    PresPtr pres_total = total == 1 ? a : amplify(a, total);
    if (auto p = support_point(w)) return PointHandle::exact_point(pres_total, *p);
    // handle-backed direct sum
    std::vector<std::pair<std::size_t, PointHandle>> parts;
    std::size_t off = 0;
    std::vector<std::size_t> offsets;
    for (const Nat& g : w.gens) {
      auto [m, s] = gen_level(g);
      parts.emplace_back(m, plistp->handle(m, s));
      offsets.push_back(off);
      off += m;
    }
    auto approx = [parts, offsets, total](long k) {
      StarPoly sum;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        StarPoly p = parts[i].second.approx(k + 2);
        sum = sum + shift_matrix_point(p, parts[i].first, total, offsets[i]);
      }
      return sum;
    };
    return PointHandle(pres_total, approx);
  };

  if (plist.invariant) {
    out.decidable = true;
    out.invariant = [plistp, gen_level](const SgWord& w) -> std::optional<Rat> {
      Rat total(0);
      for (const Nat& g : w.gens) {
        auto [m, s] = gen_level(g);
        auto v = plistp->invariant(m, s);
        if (!v) return std::nullopt;
        total += *v;
      }
      return total;
    };
  } else {
    out.invariant = [](const SgWord&) { return std::nullopt; };
  }

  out.sg.kind = words::AlgKind::semigroup;
  auto inv = out.invariant;
  auto support = out.support;
  auto level = out.level;
  out.sg.label_map = [inv](const GpWord& w) {
    SgWord sw = words::as_semigroup_word(w);
    auto v = inv(sw);
    return v ? "[class " + v->get_str() + "]" : std::string("[class]");
  };
  out.sg.kernel.mode = out.decidable ? words::OracleMode::computable : words::OracleMode::ce;
  PresPtr a_copy = a;
  Fuel default_fuel = kernel_fuel;
  out.sg.kernel.decide = [inv, support, level, a_copy, default_fuel](
                             const GpWord& wa, const GpWord& wb, Fuel fuel) -> Tri {
    SgWord x = words::as_semigroup_word(wa), y = words::as_semigroup_word(wb);
    auto vx = inv(x), vy = inv(y);
    if (vx && vy) return *vx == *vy ? Tri::Yes : Tri::No;
    // generic: pad both to a common level and run the chain search
    std::size_t nx = level(x), ny = level(y), n = nx + ny;
    PointHandle px = support(x), py = support(y);
    PresPtr pres_n = amplify(a_copy, n);
    PointHandle qx(pres_n, [px, nx, n](long k) { return pad_point_level(px.approx(k), nx, n); });
    PointHandle qy(pres_n, [py, ny, n](long k) { return pad_point_level(py.approx(k), ny, n); });
    Fuel budget = fuel > 0 ? fuel * 64 : default_fuel;
    esets::MvnResult r = mvn_semidecide(a_copy, n, qx, qy, budget);
    return r.verdict;
  };
  return out;
}

namespace {

// Shared search: find a D1-word labeling the class of the given projection
// handle (at amplification n), by invariant match or chain confirmation.
std::optional<SgWord> locate_class(const DPresentation& d1, std::size_t n,
                                   const PointHandle& target,
                                   const std::optional<Rat>& target_value, Fuel fuel) {
  Fuel spent = 0;
  for (Nat slot(0); spent < fuel; slot += 1) {
    ++spent;
    auto [mi, si] = codec::unpair(slot);
    if (!mi.fits_ulong_p()) continue;
    std::size_t m = mi.get_ui() + 1;
    if (m > 4 * n + 4) continue;
    SgWord cand = SgWord::single(codec::pair(Nat(static_cast<unsigned long>(m - 1)), si));
    if (target_value) {
      auto v = d1.invariant(cand);
      if (v && *v == *target_value) return cand;
      continue;
    }
    // chain confirmation on padded representatives
    std::size_t nc = d1.level(cand), total = std::max(n, nc);
    PresPtr pres_t = total == 1 ? d1.a : amplify(d1.a, total);
    PointHandle pt = target;
    if (total != n)
      pt = PointHandle(pres_t, [target, n, total](long k) {
        return pad_point_level(target.approx(k), n, total);
      });
    PointHandle pc = d1.support(cand);
    if (total != nc)
      pc = PointHandle(pres_t, [pc = pc, nc, total](long k) {
        return pad_point_level(pc.approx(k), nc, total);
      });
    Fuel chain_budget = std::min<Fuel>(3000, fuel - spent);
    esets::MvnResult r = mvn_semidecide(d1.a, total, pt, pc, chain_budget);
    spent += r.spent;
    if (r.verdict == Tri::Yes) return cand;
  }
  return std::nullopt;
}

}  // namespace

DMap D_of_map(const StarHom& psi, const DPresentation& d0, const DPresentation& d1,
              Fuel per_word_fuel) {
  DMap out;
  auto d0p = std::make_shared<DPresentation>(d0);
  auto d1p = std::make_shared<DPresentation>(d1);
  auto psip = std::make_shared<StarHom>(psi);
  out.apply = [d0p, d1p, psip, per_word_fuel](const SgWord& w) -> std::optional<SgWord> {
    std::size_t n = d0p->level(w);
    cstar::StarHom amped = cstar::amplify_hom(*psip, n);
    PointHandle src = d0p->support(w);
    PresPtr cod_n = amped.cod;
    auto img_approx = [amped, src](long k) { return amped.apply(src.approx(k + 1), k + 1); };
    PointHandle image(cod_n, img_approx);
    std::optional<Rat> value;
    if (d1p->decidable) {
      // exact image class value via the codomain invariant on an exact image
      if (auto p = d0p->support_point(w)) {
        StarPoly img = amped.apply(*p, 24);
        if (d1p->a->info->mvn_invariant) value = d1p->a->info->mvn_invariant(n, img);
      }
    }
    return locate_class(*d1p, n, image, value, per_word_fuel);
  };
  return out;
}

DMap align_D(const DPresentation& d0, const DPresentation& d1, Fuel per_word_fuel) {
  return D_of_map(cstar::identity_hom(d0.a), d0, d1, per_word_fuel);
}

}  // namespace ekt::kth
