#include "ekt/cstar/constructions.hpp"

#include <algorithm>

#include "ekt/error.hpp"

namespace ekt::cstar {

using codec::Nat;
using exact::Rat;

namespace {

Element eval_poly(const std::function<Element(const Nat&)>& special, const Element& zero,
                  const StarPoly& p) {
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

// Evaluates a cell polynomial whose generators decode to Gaussian-rational
// scalars through `gen_value`.
GQ eval_scalar_cell(const StarPoly& p, const std::function<GQ(const Nat&)>& gen_value) {
  GQ acc;
  for (const Term& t : p.terms) {
    GQ prod = t.coeff;
    for (const MonoLetter& l : t.mono) {
      GQ v = gen_value(l.gen);
      prod = prod * (l.star ? v.conj() : v);
    }
    acc += prod;
  }
  return acc;
}

unsigned long binom(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  Nat b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  if (!b.fits_ulong_p()) throw Error("binomial overflow in seed enumeration");
  return b.get_ui();
}

// Colex unrank of the i-th k-subset of {0..D-1}.
std::vector<std::size_t> unrank_subset(std::size_t D, std::size_t k, unsigned long i) {
  std::vector<std::size_t> out(k);
  for (std::size_t slot = k; slot > 0; --slot) {
    std::size_t m = slot - 1;
    while (m + 1 < D && binom(m + 1, slot) <= i) ++m;
    out[slot - 1] = m;
    i -= binom(m, slot);
  }
  return out;
}

}  // namespace

std::optional<ExactMatrix> seed_projection_matrix(std::size_t D, const Nat& slot) {
  auto [kind, rest] = codec::unpair(slot);
  auto diag_pattern = [D](const Nat& code) -> std::optional<std::vector<bool>> {
    auto [r, i] = codec::unpair(code);
    if (!r.fits_ulong_p() || !i.fits_ulong_p()) return std::nullopt;
    unsigned long rank = r.get_ui();
    if (rank > D || i.get_ui() >= binom(D, rank)) return std::nullopt;
    std::vector<bool> bits(D, false);
    for (std::size_t pos : unrank_subset(D, rank, i.get_ui())) bits[pos] = true;
    return bits;
  };
  if (kind == 0) {
    auto bits = diag_pattern(rest);
    if (!bits) return std::nullopt;
    ExactMatrix m(D, D);
    for (std::size_t i = 0; i < D; ++i)
      if ((*bits)[i]) m.at(i, i) = GQ::integer(1);
    return m;
  }
  if (kind == 1) {
    // 3-4-5 rotation in the (j, j+1) coordinate plane of a 0/1 diagonal.
    auto [j_code, pat] = codec::unpair(rest);
    if (!j_code.fits_ulong_p()) return std::nullopt;
    std::size_t j = j_code.get_ui();
    if (j + 1 >= D) return std::nullopt;
    auto bits = diag_pattern(pat);
    if (!bits || (*bits)[j] == (*bits)[j + 1]) return std::nullopt;
    ExactMatrix m(D, D);
    for (std::size_t i = 0; i < D; ++i)
      if ((*bits)[i] && i != j && i != j + 1) m.at(i, i) = GQ::integer(1);
    const Rat c2(9, 25), s2(16, 25), cs(12, 25);
    if ((*bits)[j]) {
      m.at(j, j) = GQ(c2);
      m.at(j, j + 1) = GQ(cs);
      m.at(j + 1, j) = GQ(cs);
      m.at(j + 1, j + 1) = GQ(s2);
    } else {
      m.at(j, j) = GQ(s2);
      m.at(j, j + 1) = GQ(-cs);
      m.at(j + 1, j) = GQ(-cs);
      m.at(j + 1, j + 1) = GQ(c2);
    }
    return m;
  }
  return std::nullopt;
}

StarPoly scalar_matrix_point(std::size_t n, const ExactMatrix& m) {
  if (m.rows() != n || m.cols() != n) throw DimensionError("scalar_matrix_point: size mismatch");
  StarPoly p;
  if (n == 1) {
    const GQ& v = m.at(0, 0);
    if (!v.is_zero()) p.terms.push_back(Term{GQ::integer(1), {MonoLetter{codec::gq_encode(v), false}}});
    return p;
  }
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const GQ& v = m.at(r, c);
      if (v.is_zero()) continue;
      Nat gen = codec::triple(codec::gq_encode(v), Nat(static_cast<long>(r)),
                              Nat(static_cast<long>(c)));
      p.terms.push_back(Term{GQ::integer(1), {MonoLetter{gen, false}}});
    }
  return p;
}

ExactMatrix eval_scalar_point(const StarPoly& p, std::size_t n) {
  std::vector<StarPoly> grid = amplified_grid(p, n);
  ExactMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      m.at(r, c) =
          eval_scalar_cell(grid[r * n + c], [](const Nat& g) { return codec::gq_decode(g); });
  return m;
}

StarPoly limit_matrix_point(const DirectLimit& lim, std::size_t n, std::size_t stage,
                            const ExactMatrix& m) {
  std::size_t nj = lim.dim_u64(stage);
  if (m.rows() != n * nj || m.cols() != n * nj)
    throw DimensionError("limit_matrix_point: size mismatch");
  StarPoly out;
  for (std::size_t R = 0; R < n; ++R)
    for (std::size_t C = 0; C < n; ++C) {
      StarPoly block;
      for (std::size_t r = 0; r < nj; ++r)
        for (std::size_t c = 0; c < nj; ++c) {
          const GQ& v = m.at(R * nj + r, C * nj + c);
          if (v.is_zero()) continue;
          Nat gen = codec::triple(Nat(static_cast<long>(stage)), Nat(static_cast<long>(r)),
                                  Nat(static_cast<long>(c)));
          block.terms.push_back(Term{v, {MonoLetter{gen, false}}});
        }
      if (block.is_zero_poly()) continue;
      out = out + (n == 1 ? block : amplify_inject(block, n, R + 1, C + 1));
    }
  return out;
}

std::pair<std::size_t, ExactMatrix> eval_limit_point(const LimitPtr& lim, const StarPoly& p,
                                                     std::size_t n) {
  auto special = [&lim](const Nat& g) {
    Nat j, a, b;
    codec::untriple(g, j, a, b);
    if (!j.fits_ulong_p()) throw Error("stage index too large");
    std::size_t stage = j.get_ui(), nj = lim->dim_u64(stage);
    std::size_t r = codec::fold_index(a, nj), c = codec::fold_index(b, nj);
    return StageElem::make(lim, stage, ExactMatrix::unit(nj, r, c));
  };
  Element zero = StageElem::make(lim, 0, ExactMatrix::zero(lim->dim_u64(0), lim->dim_u64(0)));
  Element acc = zero.place(1, n, 0, 0);
  std::vector<StarPoly> grid = amplified_grid(p, n);
  for (std::size_t R = 0; R < n; ++R)
    for (std::size_t C = 0; C < n; ++C) {
      const StarPoly& cell = grid[R * n + C];
      if (cell.is_zero_poly()) continue;
      Element v = eval_poly(special, zero, cell);
      acc = acc.add(v.place(1, n, R, C));
    }
  const auto* st = acc.as<StageElem>();
  if (!st) throw Error("eval_limit_point: unexpected backing");
  return {st->stage(), st->rep()};
}

StarPoly recode_amplified(const StarPoly& p, std::size_t n, std::size_t k) {
  std::size_t big = n * k;
  StarPoly out;
  for (const Term& t : p.terms) {
    Term u;
    u.coeff = t.coeff;
    for (const MonoLetter& l : t.mono) {
      Nat g, a, b;
      codec::untriple(l.gen, g, a, b);
      std::size_t rb = codec::fold_index(a, big) - 1, cb = codec::fold_index(b, big) - 1;
      Nat inner = codec::triple(g, Nat(static_cast<long>(rb % k)), Nat(static_cast<long>(cb % k)));
      u.mono.push_back(MonoLetter{codec::triple(inner, Nat(static_cast<long>(rb / k)),
                                                Nat(static_cast<long>(cb / k))),
                                  l.star});
    }
    out.terms.push_back(std::move(u));
  }
  return out.normalized();
}

StarPoly flatten_amplified(const StarPoly& p, std::size_t n, std::size_t k) {
  std::size_t big = n * k;
  StarPoly out;
  for (const Term& t : p.terms) {
    Term u;
    u.coeff = t.coeff;
    for (const MonoLetter& l : t.mono) {
      Nat outer, a, b;
      codec::untriple(l.gen, outer, a, b);
      std::size_t R = codec::fold_index(a, n) - 1, C = codec::fold_index(b, n) - 1;
      Nat g, ia, ib;
      codec::untriple(outer, g, ia, ib);
      std::size_t r = codec::fold_index(ia, k) - 1, c = codec::fold_index(ib, k) - 1;
      u.mono.push_back(MonoLetter{codec::triple(g, Nat(static_cast<long>(R * k + r)),
                                                Nat(static_cast<long>(C * k + c))),
                                  l.star});
    }
    out.terms.push_back(std::move(u));
  }
  return out.normalized();
}

// ---- standard presentations ----

PresPtr scalar_presentation() {
  auto pres = std::make_shared<CPresentation>();
  pres->mode = NormMode::computable;
  pres->special = [](const Nat& g) {
    ExactMatrix m(1, 1);
    m.at(0, 0) = codec::gq_decode(g);
    return MatrixElem::make(std::move(m));
  };
  pres->zero = MatrixElem::make(ExactMatrix::zero(1, 1));
  pres->unit = StarPoly::generator(codec::gq_encode(GQ::integer(1)));
  auto info = pres->info;
  info->kind = InstanceInfo::Kind::scalar;
  info->fd_dim = 1;
  info->projection_points = [](std::size_t n, const Nat& slot) -> std::optional<StarPoly> {
    auto m = seed_projection_matrix(n, slot);
    if (!m) return std::nullopt;
    return scalar_matrix_point(n, *m);
  };
  info->relation_hints = [](RelTag tag, std::size_t n, std::size_t sys_size,
                            const Nat& slot) -> std::optional<std::vector<StarPoly>> {
    if (tag == RelTag::projection) {
      auto m = seed_projection_matrix(n, slot);
      if (!m) return std::nullopt;
      return std::vector<StarPoly>{scalar_matrix_point(n, *m)};
    }
    if (tag == RelTag::matrix_units || tag == RelTag::unital_matrix_units) {
      // Canonical copy of a sys_size x sys_size unit system inside M_n(C);
      // it exists exactly when sys_size divides n.
      if (slot != 0 || sys_size == 0 || n % sys_size != 0) return std::nullopt;
      std::size_t copies = n / sys_size;
      std::vector<StarPoly> sys;
      for (std::size_t r = 0; r < sys_size; ++r)
        for (std::size_t c = 0; c < sys_size; ++c) {
          ExactMatrix m(n, n);
          for (std::size_t l = 0; l < copies; ++l)
            m.at(r + l * sys_size, c + l * sys_size) = GQ::integer(1);
          sys.push_back(scalar_matrix_point(n, m));
        }
      return sys;
    }
    return std::nullopt;
  };
  info->mvn_invariant = [](std::size_t n, const StarPoly& p) -> std::optional<Rat> {
    ExactMatrix m = eval_scalar_point(p, n);
    if (!(m == m.adjoint()) || !(m * m == m)) return std::nullopt;
    return Rat(static_cast<long>(m.rank()));
  };
  info->realize_class =
      [](const Rat& v, std::size_t mult) -> std::optional<std::pair<std::size_t, Nat>> {
    if (v < 0 || v.get_den() != 1 || !v.get_num().fits_ulong_p()) return std::nullopt;
    unsigned long rank = v.get_num().get_ui();
    std::size_t level = mult;
    while (level < rank || level == 0) level += mult;
    Nat slot = codec::pair(Nat(0), codec::pair(Nat(rank), Nat(0)));
    return std::make_pair(level, slot);
  };
  return pres;
}

PresPtr fd_presentation(std::size_t d) {
  if (d == 0) throw DimensionError("fd_presentation: dimension must be positive");
  PresPtr base = scalar_presentation();
  return d == 1 ? base : amplify(base, d);
}

PresPtr limit_presentation(LimitPtr lim) {
  auto pres = std::make_shared<CPresentation>();
  pres->mode = NormMode::computable;
  pres->special = [lim](const Nat& g) {
    Nat j, a, b;
    codec::untriple(g, j, a, b);
    if (!j.fits_ulong_p()) throw Error("stage index too large");
    std::size_t stage = j.get_ui(), nj = lim->dim_u64(stage);
    std::size_t r = codec::fold_index(a, nj), c = codec::fold_index(b, nj);
    return StageElem::make(lim, stage, ExactMatrix::unit(nj, r, c));
  };
  pres->zero = StageElem::make(lim, 0, ExactMatrix::zero(lim->dim_u64(0), lim->dim_u64(0)));
  {
    std::size_t n0 = lim->dim_u64(0);
    pres->unit = limit_matrix_point(*lim, 1, 0, ExactMatrix::identity(n0));
  }
  auto info = pres->info;
  info->kind = InstanceInfo::Kind::direct_limit;
  info->limit = lim;
  info->projection_points = [lim](std::size_t n, const Nat& slot) -> std::optional<StarPoly> {
    auto [j_code, rest] = codec::unpair(slot);
    if (!j_code.fits_ulong_p()) return std::nullopt;
    std::size_t stage = j_code.get_ui();
    if (stage > 24 || !lim->materializable(stage)) return std::nullopt;
    std::size_t D = n * lim->dim_u64(stage);
    if (D > 48) return std::nullopt;  // keep materialized stages small
    auto m = seed_projection_matrix(D, rest);
    if (!m) return std::nullopt;
    return limit_matrix_point(*lim, n, stage, *m);
  };
  info->relation_hints = [lim](RelTag tag, std::size_t n, std::size_t sys_size,
                               const Nat& slot) -> std::optional<std::vector<StarPoly>> {
    if (tag == RelTag::projection) {
      auto [j_code, rest] = codec::unpair(slot);
      if (!j_code.fits_ulong_p()) return std::nullopt;
      std::size_t stage = j_code.get_ui();
      if (stage > 24 || !lim->materializable(stage)) return std::nullopt;
      std::size_t D = n * lim->dim_u64(stage);
      if (D > 48) return std::nullopt;
      auto m = seed_projection_matrix(D, rest);
      if (!m) return std::nullopt;
      return std::vector<StarPoly>{limit_matrix_point(*lim, n, stage, *m)};
    }
    if (tag == RelTag::matrix_units || tag == RelTag::unital_matrix_units) {
      // Canonical copy of a sys_size system inside M_n(A) at stage j,
      // available when sys_size | n * dim(j).
      if (!slot.fits_ulong_p() || sys_size == 0) return std::nullopt;
      std::size_t stage = slot.get_ui();
      if (stage > 24 || !lim->materializable(stage)) return std::nullopt;
      std::size_t total = n * lim->dim_u64(stage);
      if (total > 64) return std::nullopt;
      if (total % sys_size != 0) return std::nullopt;
      std::size_t copies = total / sys_size;
      std::vector<StarPoly> sys;
      for (std::size_t r = 0; r < sys_size; ++r)
        for (std::size_t c = 0; c < sys_size; ++c) {
          ExactMatrix m(total, total);
          for (std::size_t l = 0; l < copies; ++l)
            m.at(r + l * sys_size, c + l * sys_size) = GQ::integer(1);
          sys.push_back(limit_matrix_point(*lim, n, stage, m));
        }
      return sys;
    }
    return std::nullopt;
  };
  info->mvn_invariant = [lim](std::size_t n, const StarPoly& p) -> std::optional<Rat> {
    auto [stage, rep] = eval_limit_point(lim, p, n);
    if (!(rep == rep.adjoint()) || !(rep * rep == rep)) return std::nullopt;
    GQ t = rep.trace_sum();
    if (t.im != 0) return std::nullopt;
    return t.re / static_cast<long>(lim->dim_u64(stage));
  };
  info->realize_class =
      [lim](const Rat& v, std::size_t mult) -> std::optional<std::pair<std::size_t, Nat>> {
    if (v < 0) return std::nullopt;
    for (std::size_t j = 0; j <= 24; ++j) {
      if (!lim->materializable(j)) break;
      const Nat den = v.get_den();
      if (lim->dim(j) % den != 0) continue;
      std::size_t nj = lim->dim_u64(j);
      // rank = v * n_j at a level making it fit
      Nat rank_n = v.get_num() * (Nat(static_cast<unsigned long>(nj)) / den);
      if (!rank_n.fits_ulong_p()) continue;
      unsigned long rank = rank_n.get_ui();
      std::size_t level = mult;
      while (level * nj < rank) level += mult;
      if (level * nj > 48) continue;
      Nat slot = codec::pair(Nat(static_cast<unsigned long>(j)),
                             codec::pair(Nat(0), codec::pair(Nat(rank), Nat(0))));
      return std::make_pair(level, slot);
    }
    return std::nullopt;
  };
  return pres;
}

PresPtr amplify(PresPtr a, std::size_t n) {
  if (n == 0) throw DimensionError("amplify: n must be positive");
  auto pres = std::make_shared<CPresentation>();
  pres->mode = a->mode;
  auto lift = [a](const Element& e) {
    if (e.as<SymbolicElem>()) return GridElem::make(1, {e}, e.zero_like());
    return e;
  };
  pres->special = [a, n, lift](const Nat& g) {
    Nat m, ra, rb;
    codec::untriple(g, m, ra, rb);
    std::size_t r = codec::fold_index(ra, n), c = codec::fold_index(rb, n);
    return lift(a->special(m)).place(1, n, r - 1, c - 1);
  };
  pres->zero = lift(a->zero).place(1, n, 0, 0);
  if (a->unit) {
    StarPoly u;
    for (std::size_t r = 1; r <= n; ++r) u = u + amplify_inject(*a->unit, n, r, r);
    pres->unit = u;
  }
  auto info = pres->info;
  info->kind = InstanceInfo::Kind::amplified;
  info->base0 = a;
  info->amp = n;
  const auto base_info = a->info;
  // n2 = 1 asks for points of the amplified algebra itself, which are
  // exactly the base's M_n points; only deeper amplifications recode.
  if (base_info->projection_points)
    info->projection_points = [base_info, n](std::size_t n2,
                                             const Nat& slot) -> std::optional<StarPoly> {
      auto p = base_info->projection_points(n2 * n, slot);
      if (!p) return std::nullopt;
      return n2 == 1 ? *p : recode_amplified(*p, n2, n);
    };
  if (base_info->relation_hints)
    info->relation_hints = [base_info, n](RelTag tag, std::size_t n2, std::size_t sys_size,
                                          const Nat& slot)
        -> std::optional<std::vector<StarPoly>> {
      auto tup = base_info->relation_hints(tag, n2 * n, sys_size, slot);
      if (!tup) return std::nullopt;
      if (n2 == 1) return tup;
      std::vector<StarPoly> out;
      for (const StarPoly& p : *tup) out.push_back(recode_amplified(p, n2, n));
      return out;
    };
  if (base_info->mvn_invariant)
    info->mvn_invariant = [base_info, n](std::size_t n2, const StarPoly& p) {
      return base_info->mvn_invariant(n2 * n, n2 == 1 ? p : flatten_amplified(p, n2, n));
    };
  if (base_info->pi_matrix)
    info->pi_matrix = [base_info, n](std::size_t n2, const StarPoly& p) {
      return base_info->pi_matrix(n2 * n, n2 == 1 ? p : flatten_amplified(p, n2, n));
    };
  if (base_info->realize_class)
    info->realize_class =
        [base_info, n](const Rat& v,
                       std::size_t mult) -> std::optional<std::pair<std::size_t, Nat>> {
      auto r = base_info->realize_class(v, mult * n);
      if (!r) return std::nullopt;
      return std::make_pair(r->first / n, r->second);
    };
  return pres;
}

PresPtr product(PresPtr a, PresPtr b) {
  auto pres = std::make_shared<CPresentation>();
  pres->mode = combine_norm_modes(a->mode, b->mode);
  pres->special = [a, b](const Nat& g) {
    auto [i, j] = codec::unpair(g);
    return PairElem::make(a->eval(a->rational_point(i)), b->eval(b->rational_point(j)));
  };
  pres->zero = PairElem::make(a->zero, b->zero);
  if (a->unit && b->unit)
    pres->unit = StarPoly::generator(
        codec::pair(starpoly_encode(*a->unit), starpoly_encode(*b->unit)));
  auto info = pres->info;
  info->kind = InstanceInfo::Kind::product;
  info->base0 = a;
  info->base1 = b;
  return pres;
}

PresPtr unitize(PresPtr a) {
  Element one_lift;
  if (a->unit) {
    one_lift = a->one();
  } else if (a->info->kind == InstanceInfo::Kind::suspended && a->info->base0 &&
             a->info->base0->unit) {
    one_lift = CurveElem::constant(a->info->base0->one());
  } else {
    throw Error("unitize: shipped for unital presentations and suspensions of unital ones");
  }
  auto pres = std::make_shared<CPresentation>();
  pres->mode = a->mode;
  Element scalar_zero = MatrixElem::make(ExactMatrix::zero(1, 1));
  pres->special = [a, one_lift](const Nat& g) {
    auto [m, k] = codec::unpair(g);
    GQ alpha = codec::gq_decode(k);
    ExactMatrix c(1, 1);
    c.at(0, 0) = alpha;
    return PairElem::make(a->special(m).add(one_lift.scale(alpha)), MatrixElem::make(c));
  };
  pres->zero = PairElem::make(a->zero, scalar_zero);
  {
    // (0, 1) = (a_0, 1) - (a_0, 0)
    Nat one_code = codec::pair(Nat(0), codec::gq_encode(GQ::integer(1)));
    Nat zero_code = codec::pair(Nat(0), codec::gq_encode(GQ()));
    pres->unit = StarPoly::generator(one_code) - StarPoly::generator(zero_code);
  }
  auto info = pres->info;
  info->kind = InstanceInfo::Kind::unitized;
  info->base0 = a;
  StarPoly unit_poly = *pres->unit;
  info->pi_matrix = [](std::size_t n, const StarPoly& p) {
    std::vector<StarPoly> grid = amplified_grid(p, n);
    ExactMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        m.at(r, c) = eval_scalar_cell(grid[r * n + c], [](const Nat& g) {
          auto [mm, k] = codec::unpair(g);
          (void)mm;
          return codec::gq_decode(k);
        });
    return m;
  };
  auto scalar_point = [unit_poly](std::size_t n, const ExactMatrix& m) {
    StarPoly out;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        const GQ& v = m.at(r, c);
        if (v.is_zero()) continue;
        StarPoly cell = unit_poly.scaled(v);
        out = out + (n == 1 ? cell : amplify_inject(cell, n, r + 1, c + 1));
      }
    return out;
  };
  // iota recode: a point of M_n(A#) becomes the point of M_n(A~#) with
  // vanishing scalar part (letterwise gen |-> <gen, 0>).
  auto iota_point = [](const StarPoly& p, std::size_t n) {
    const Nat zero_code = codec::gq_encode(GQ());
    StarPoly out;
    for (const Term& t : p.terms) {
      Term u;
      u.coeff = t.coeff;
      for (const MonoLetter& l : t.mono) {
        if (n == 1) {
          u.mono.push_back(MonoLetter{codec::pair(l.gen, zero_code), l.star});
        } else {
          Nat g, ra, rb;
          codec::untriple(l.gen, g, ra, rb);
          u.mono.push_back(MonoLetter{codec::triple(codec::pair(g, zero_code), ra, rb), l.star});
        }
      }
      out.terms.push_back(std::move(u));
    }
    return out.normalized();
  };
  // (0, M): scalar part M with vanishing A-part.
  auto base_unit = a->unit;  // present iff A is unital
  PresPtr base = a;
  auto c_only = [scalar_point, iota_point, base_unit, base](std::size_t n, const ExactMatrix& m)
      -> StarPoly {
    if (!base_unit) return scalar_point(n, m);  // nonunital base: the lift already vanishes
    StarPoly lift;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        const GQ& v = m.at(r, c);
        if (v.is_zero()) continue;
        StarPoly cell = base_unit->scaled(v);
        lift = lift + (n == 1 ? cell : amplify_inject(cell, n, r + 1, c + 1));
      }
    return scalar_point(n, m) - iota_point(lift, n);
  };
  // Seeds: for unital bases, sums of an iota-image of a base projection seed
  // and a scalar-side seed (independent rank pairs); otherwise the scalar
  // diagonal/rotation family alone.
  auto base_info = a->info;
  info->projection_points = [scalar_point, c_only, iota_point, base_info, base_unit](
                                std::size_t n, const Nat& slot) -> std::optional<StarPoly> {
    if (!base_unit || !base_info->projection_points) {
      auto m = seed_projection_matrix(n, slot);
      if (!m) return std::nullopt;
      return scalar_point(n, *m);
    }
    auto [s1, s2] = codec::unpair(slot);
    auto bp = base_info->projection_points(n, s1);
    auto cm = seed_projection_matrix(n, s2);
    if (!bp || !cm) return std::nullopt;
    return iota_point(*bp, n) + c_only(n, *cm);
  };
  info->relation_hints = [scalar_point, c_only, iota_point, base_info, base_unit](
                             RelTag tag, std::size_t n, std::size_t sys_size,
                             const Nat& slot) -> std::optional<std::vector<StarPoly>> {
    if (tag == RelTag::projection) {
      if (base_unit && base_info->projection_points) {
        auto [s1, s2] = codec::unpair(slot);
        auto bp = base_info->projection_points(n, s1);
        auto cm = seed_projection_matrix(n, s2);
        if (!bp || !cm) return std::nullopt;
        return std::vector<StarPoly>{iota_point(*bp, n) + c_only(n, *cm)};
      }
      auto m = seed_projection_matrix(n, slot);
      if (!m) return std::nullopt;
      return std::vector<StarPoly>{scalar_point(n, *m)};
    }
    if (tag == RelTag::matrix_units || tag == RelTag::unital_matrix_units) {
      if (slot != 0 || sys_size == 0 || n % sys_size != 0) return std::nullopt;
      std::size_t copies = n / sys_size;
      std::vector<StarPoly> sys;
      for (std::size_t r = 0; r < sys_size; ++r)
        for (std::size_t c = 0; c < sys_size; ++c) {
          ExactMatrix m(n, n);
          for (std::size_t l = 0; l < copies; ++l)
            m.at(r + l * sys_size, c + l * sys_size) = GQ::integer(1);
          sys.push_back(scalar_point(n, m));
        }
      return sys;
    }
    return std::nullopt;
  };
  return pres;
}

PresPtr suspend(PresPtr a) {
  auto pres = std::make_shared<CPresentation>();
  pres->mode = a->mode;
  Element zero_curve = CurveElem::make({Rat(0), Rat(1)}, {{a->zero}}, a->zero);
  pres->special = [a](const Nat& g) {
    auto [m, k] = codec::unpair(g);
    return polygon_tensor(polygon_decode(m), a->special(k));
  };
  pres->zero = zero_curve;
  auto info = pres->info;
  info->kind = InstanceInfo::Kind::suspended;
  info->base0 = a;
  return pres;
}

PolygonNodes polygon_decode(const Nat& m) {
  PolygonNodes nodes;
  std::vector<Nat> raw = codec::list_decode(m);
  if (raw.empty()) return nodes;
  Rat s(0);
  std::vector<std::pair<Rat, GQ>> acc;
  for (const Nat& code : raw) {
    auto [gap, val] = codec::unpair(code);
    s += codec::positive_rat_decode(gap);
    acc.emplace_back(s, codec::gq_decode(val));
  }
  Rat denom = s + 1;
  for (auto& [t, v] : acc) nodes.emplace_back(t / denom, v);
  return nodes;
}

Nat polygon_encode(const PolygonNodes& interior) {
  if (interior.empty()) return Nat(0);
  // t_i = s_i / (s_L + 1)  =>  s_L = t_L / (1 - t_L), s_i = t_i (s_L + 1).
  Rat tl = interior.back().first;
  if (tl <= 0 || tl >= 1) throw Error("polygon_encode: nodes must lie in (0,1)");
  Rat sl = tl / (1 - tl);
  std::vector<Nat> codes;
  Rat prev(0);
  for (const auto& [t, v] : interior) {
    Rat s = t * (sl + 1);
    Rat gap = s - prev;
    if (gap <= 0) throw Error("polygon_encode: nodes must be strictly increasing");
    codes.push_back(codec::pair(codec::positive_rat_encode(gap), codec::gq_encode(v)));
    prev = s;
  }
  return codec::list_encode(codes);
}

Element polygon_tensor(const PolygonNodes& interior, const Element& value) {
  Element zero = value.zero_like();
  std::vector<Rat> bps{Rat(0)};
  std::vector<std::pair<Rat, GQ>> nodes{{Rat(0), GQ()}};
  for (const auto& nd : interior) {
    bps.push_back(nd.first);
    nodes.push_back(nd);
  }
  bps.push_back(Rat(1));
  nodes.emplace_back(Rat(1), GQ());
  std::vector<std::vector<Element>> segs;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const auto& [t0, v0] = nodes[i];
    const auto& [t1, v1] = nodes[i + 1];
    Rat dt = t1 - t0;
    GQ slope((v1.re - v0.re) / dt, (v1.im - v0.im) / dt);
    GQ c0 = v0 - GQ(t0) * slope;
    segs.push_back({value.scale(c0), value.scale(slope)});
  }
  return CurveElem::make(std::move(bps), std::move(segs), zero);
}

StarHom identity_hom(PresPtr a) {
  StarHom h;
  h.dom = a;
  h.cod = a;
  h.apply = [](const StarPoly& p, long) { return p; };
  h.exact = true;
  return h;
}

StarHom amplify_hom(const StarHom& h, std::size_t n) {
  if (n == 1) return h;
  StarHom out;
  out.dom = amplify(h.dom, n);
  out.cod = amplify(h.cod, n);
  out.exact = h.exact;
  auto apply = h.apply;
  long slack = 1;
  {
    std::size_t cells = n * n;
    while ((1u << slack) < cells) ++slack;
  }
  out.apply = [apply, n, slack](const StarPoly& p, long k) {
    std::vector<StarPoly> grid = amplified_grid(p, n);
    StarPoly img;
    for (std::size_t r = 1; r <= n; ++r)
      for (std::size_t c = 1; c <= n; ++c) {
        const StarPoly& cell = grid[(r - 1) * n + (c - 1)];
        if (cell.is_zero_poly()) continue;
        img = img + amplify_inject(apply(cell, k + slack), n, r, c);
      }
    return img;
  };
  return out;
}

}  // namespace ekt::cstar
