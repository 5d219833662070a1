#include "ekt/cstar/element.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ekt/error.hpp"
#include "ekt/exact/opnorm.hpp"

namespace ekt::cstar {

using exact::pow2;

Nat DirectLimit::dim(std::size_t j) const {
  std::scoped_lock lock(mu_);
  while (cache_.size() <= j) {
    Nat next = dim_fn_(cache_.size());
    if (next <= 0) throw Error("DirectLimit: nonpositive stage dimension");
    if (!cache_.empty() && next % cache_.back() != 0)
      throw Error("DirectLimit: stage dimensions must form a divisibility chain");
    cache_.push_back(std::move(next));
  }
  return cache_[j];
}

std::size_t DirectLimit::dim_u64(std::size_t j) const {
  Nat d = dim(j);
  if (!d.fits_ulong_p()) throw Error("DirectLimit: stage dimension too large to materialize");
  return d.get_ui();
}

bool DirectLimit::materializable(std::size_t j) const { return dim(j).fits_ulong_p(); }

std::size_t DirectLimit::stage_with_multiple(const Nat& m, std::size_t from,
                                             std::size_t limit) const {
  for (std::size_t j = from; j <= limit; ++j)
    if (dim(j) % m == 0) return j;
  throw StagingError("DirectLimit: no stage with the requested divisor within the search bound");
}

const ElementImpl& Element::impl() const {
  if (!impl_) throw Error("Element: empty handle");
  return *impl_;
}

Element Element::dir_sum(const Element& a, std::size_t na, const Element& b, std::size_t nb) {
  return a.place(na, na + nb, 0, 0).add(b.place(nb, na + nb, na, na));
}

// ---- MatrixElem ----

Element MatrixElem::make(ExactMatrix m) { return Element(std::make_shared<MatrixElem>(std::move(m))); }

namespace {
const MatrixElem& want_matrix(const Element& o) {
  const auto* p = o.as<MatrixElem>();
  if (!p) throw AlgebraMismatch("expected a matrix-backed element");
  return *p;
}
}  // namespace

Element MatrixElem::add(const Element& o) const { return make(m_ + want_matrix(o).m_); }
Element MatrixElem::mul(const Element& o) const { return make(m_ * want_matrix(o).m_); }
Element MatrixElem::adjoint() const { return make(m_.adjoint()); }
Element MatrixElem::scale(const GQ& c) const { return make(m_.scale(c)); }
Ival MatrixElem::norm(long k) const { return exact::certified_opnorm(m_, k); }

Element MatrixElem::place(std::size_t from, std::size_t to, std::size_t ro, std::size_t co) const {
  if (from == 0 || m_.rows() % from != 0) throw DimensionError("place: bad ambient amplification");
  std::size_t unit = m_.rows() / from;
  return make(m_.embed(to * unit, to * unit, ro * unit, co * unit));
}

std::string MatrixElem::describe() const {
  std::ostringstream os;
  os << "matrix(" << m_.rows() << "x" << m_.cols() << ")";
  return os.str();
}

// ---- StageElem ----

StageElem::StageElem(LimitPtr limit, std::size_t stage, ExactMatrix rep)
    : limit_(std::move(limit)), stage_(stage), rep_(std::move(rep)) {
  if (!rep_.square() || rep_.rows() % limit_->dim_u64(stage_) != 0)
    throw DimensionError("StageElem: representative size is not a multiple of the stage dimension");
}

Element StageElem::make(LimitPtr limit, std::size_t stage, ExactMatrix rep) {
  return Element(std::make_shared<StageElem>(std::move(limit), stage, std::move(rep)));
}

std::size_t StageElem::amp() const { return rep_.rows() / limit_->dim_u64(stage_); }

ExactMatrix StageElem::rep_at_stage(std::size_t stage) const {
  if (stage < stage_) throw DimensionError("rep_at_stage: cannot demote a stage element");
  std::size_t nf = limit_->dim_u64(stage_), nt = limit_->dim_u64(stage);
  if (stage == stage_) return rep_;
  std::size_t a = amp(), copies = nt / nf;
  ExactMatrix out(a * nt, a * nt);
  for (std::size_t bi = 0; bi < a; ++bi)
    for (std::size_t bj = 0; bj < a; ++bj)
      for (std::size_t l = 0; l < copies; ++l)
        for (std::size_t r = 0; r < nf; ++r)
          for (std::size_t c = 0; c < nf; ++c) {
            const GQ& v = rep_.at(bi * nf + r, bj * nf + c);
            if (!v.is_zero()) out.at(bi * nt + l * nf + r, bj * nt + l * nf + c) = v;
          }
  return out;
}

namespace {
const StageElem& want_stage(const Element& o, const LimitPtr& limit) {
  const auto* p = o.as<StageElem>();
  if (!p || p->limit() != limit) throw AlgebraMismatch("expected an element of the same direct limit");
  return *p;
}
}  // namespace

Element StageElem::add(const Element& o) const {
  const StageElem& rhs = want_stage(o, limit_);
  std::size_t s = std::max(stage_, rhs.stage());
  return make(limit_, s, rep_at_stage(s) + rhs.rep_at_stage(s));
}

Element StageElem::mul(const Element& o) const {
  const StageElem& rhs = want_stage(o, limit_);
  std::size_t s = std::max(stage_, rhs.stage());
  return make(limit_, s, rep_at_stage(s) * rhs.rep_at_stage(s));
}

Element StageElem::adjoint() const { return make(limit_, stage_, rep_.adjoint()); }
Element StageElem::scale(const GQ& c) const { return make(limit_, stage_, rep_.scale(c)); }
Ival StageElem::norm(long k) const { return exact::certified_opnorm(rep_, k); }

Element StageElem::place(std::size_t from, std::size_t to, std::size_t ro, std::size_t co) const {
  if (from == 0 || rep_.rows() % from != 0) throw DimensionError("place: bad ambient amplification");
  std::size_t unit = rep_.rows() / from;
  return make(limit_, stage_, rep_.embed(to * unit, to * unit, ro * unit, co * unit));
}

std::string StageElem::describe() const {
  std::ostringstream os;
  os << "stage(" << stage_ << ", dim " << rep_.rows() << ")";
  return os.str();
}

// ---- CurveElem ----

CurveElem::CurveElem(std::vector<Rat> breakpoints, std::vector<std::vector<Element>> segs,
                     Element inner_zero)
    : bps_(std::move(breakpoints)), segs_(std::move(segs)), zero_(std::move(inner_zero)) {
  if (bps_.size() < 2 || bps_.front() != 0 || bps_.back() != 1)
    throw Error("CurveElem: breakpoints must run from 0 to 1");
  for (std::size_t i = 0; i + 1 < bps_.size(); ++i)
    if (bps_[i] >= bps_[i + 1]) throw Error("CurveElem: breakpoints not increasing");
  if (segs_.size() + 1 != bps_.size()) throw Error("CurveElem: segment count mismatch");
  for (auto& seg : segs_)
    if (seg.empty()) seg.push_back(zero_);
}

Element CurveElem::make(std::vector<Rat> breakpoints, std::vector<std::vector<Element>> segs,
                        Element inner_zero) {
  return Element(
      std::make_shared<CurveElem>(std::move(breakpoints), std::move(segs), std::move(inner_zero)));
}

Element CurveElem::constant(const Element& value) {
  return make({Rat(0), Rat(1)}, {{value}}, value.zero_like());
}

Element CurveElem::eval(const Rat& t) const {
  std::size_t i = 0;
  while (i + 2 < bps_.size() && t >= bps_[i + 1]) ++i;
  const auto& seg = segs_[i];
  Element v = seg.back();
  for (std::size_t j = seg.size() - 1; j-- > 0;) v = v.scale(GQ(t)).add(seg[j]);
  return v;
}

namespace {

const CurveElem& want_curve(const Element& o) {
  const auto* p = o.as<CurveElem>();
  if (!p) throw AlgebraMismatch("expected a curve element");
  return *p;
}

// Segment coefficients are kept in the global variable t, so refining the
// partition reuses them unchanged.
std::vector<Rat> merge_bps(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  std::vector<Rat> out;
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

Element CurveElem::add(const Element& o) const {
  const CurveElem& rhs = want_curve(o);
  std::vector<Rat> bps = merge_bps(bps_, rhs.bps_);
  std::vector<std::vector<Element>> segs;
  std::size_t i = 0, j = 0;
  for (std::size_t s = 0; s + 1 < bps.size(); ++s) {
    while (bps_[i + 1] <= bps[s]) ++i;
    while (rhs.bps_[j + 1] <= bps[s]) ++j;
    const auto& a = segs_[i];
    const auto& b = rhs.segs_[j];
    std::vector<Element> sum;
    for (std::size_t d = 0; d < std::max(a.size(), b.size()); ++d) {
      if (d < a.size() && d < b.size())
        sum.push_back(a[d].add(b[d]));
      else
        sum.push_back(d < a.size() ? a[d] : b[d]);
    }
    segs.push_back(std::move(sum));
  }
  return make(std::move(bps), std::move(segs), zero_);
}

Element CurveElem::mul(const Element& o) const {
  const CurveElem& rhs = want_curve(o);
  std::vector<Rat> bps = merge_bps(bps_, rhs.bps_);
  std::vector<std::vector<Element>> segs;
  std::size_t i = 0, j = 0;
  for (std::size_t s = 0; s + 1 < bps.size(); ++s) {
    while (bps_[i + 1] <= bps[s]) ++i;
    while (rhs.bps_[j + 1] <= bps[s]) ++j;
    const auto& a = segs_[i];
    const auto& b = rhs.segs_[j];
    std::vector<Element> prod(a.size() + b.size() - 1, zero_);
    for (std::size_t d = 0; d < a.size(); ++d)
      for (std::size_t e = 0; e < b.size(); ++e) prod[d + e] = prod[d + e].add(a[d].mul(b[e]));
    segs.push_back(std::move(prod));
  }
  return make(std::move(bps), std::move(segs), zero_);
}

Element CurveElem::adjoint() const {
  std::vector<std::vector<Element>> segs;
  for (const auto& seg : segs_) {
    std::vector<Element> s;
    for (const Element& c : seg) s.push_back(c.adjoint());
    segs.push_back(std::move(s));
  }
  return make(bps_, std::move(segs), zero_);
}

Element CurveElem::scale(const GQ& c) const {
  std::vector<std::vector<Element>> segs;
  for (const auto& seg : segs_) {
    std::vector<Element> s;
    for (const Element& x : seg) s.push_back(x.scale(c));
    segs.push_back(std::move(s));
  }
  return make(bps_, std::move(segs), zero_);
}

Ival CurveElem::norm(long k) const {
  Ival total = Ival::point(Rat(0));
  for (std::size_t s = 0; s < segs_.size(); ++s) {
    const Rat &u = bps_[s], &v = bps_[s + 1];
    std::vector<Element> seg = segs_[s];
    while (seg.size() > 1 && seg.back().exactly_zero()) seg.pop_back();
    Ival seg_norm = Ival::point(Rat(0));
    if (seg.size() == 1) {
      seg_norm = seg[0].norm(k + 1);
    } else if (seg.size() == 2) {
      // affine in t: the norm is convex, so the sup sits at an endpoint
      seg_norm = Ival::max_join(eval(u).norm(k + 1), eval(v).norm(k + 1));
    } else {
      // certified branch and bound with a Lipschitz bound on [0,1]
      Rat lip(0);
      for (std::size_t d = 1; d < seg.size(); ++d)
        lip += Rat(static_cast<long>(d)) * seg[d].norm(6).hi;
      struct Node {
        Rat u, v, ub;
      };
      std::vector<Node> nodes;
      Rat glo = Ival::max_join(eval(u).norm(k + 3), eval(v).norm(k + 3)).lo;
      auto push = [&](const Rat& a, const Rat& b) {
        Rat mid = (a + b) / 2;
        Ival nm = eval(mid).norm(k + 3);
        if (nm.lo > glo) glo = nm.lo;
        nodes.push_back(Node{a, b, nm.hi + lip * (b - a) / 2});
      };
      push(u, v);
      const Rat target = pow2(-k) / 2;
      while (true) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < nodes.size(); ++i)
          if (nodes[i].ub > nodes[best].ub) best = i;
        if (nodes[best].ub <= glo + target) break;
        Node n = nodes[best];
        nodes.erase(nodes.begin() + static_cast<long>(best));
        Rat mid = (n.u + n.v) / 2;
        push(n.u, mid);
        push(mid, n.v);
      }
      Rat gub = glo;
      for (const Node& n : nodes)
        if (n.ub > gub) gub = n.ub;
      seg_norm = Ival(glo, gub);
    }
    total = Ival::max_join(total, seg_norm);
  }
  return total;
}

bool CurveElem::exactly_zero() const {
  for (const auto& seg : segs_)
    for (const Element& c : seg)
      if (!c.exactly_zero()) return false;
  return true;
}

Element CurveElem::place(std::size_t from, std::size_t to, std::size_t ro, std::size_t co) const {
  std::vector<std::vector<Element>> segs;
  for (const auto& seg : segs_) {
    std::vector<Element> s;
    for (const Element& c : seg) s.push_back(c.place(from, to, ro, co));
    segs.push_back(std::move(s));
  }
  return make(bps_, std::move(segs), zero_.place(from, to, ro, co));
}

std::string CurveElem::describe() const {
  std::ostringstream os;
  os << "curve(" << segs_.size() << " segments)";
  return os.str();
}

// ---- PairElem ----

Element PairElem::make(Element a, Element b) {
  return Element(std::make_shared<PairElem>(std::move(a), std::move(b)));
}

namespace {
const PairElem& want_pair(const Element& o) {
  const auto* p = o.as<PairElem>();
  if (!p) throw AlgebraMismatch("expected a pair element");
  return *p;
}
}  // namespace

Element PairElem::add(const Element& o) const {
  const PairElem& r = want_pair(o);
  return make(a_.add(r.a_), b_.add(r.b_));
}
Element PairElem::mul(const Element& o) const {
  const PairElem& r = want_pair(o);
  return make(a_.mul(r.a_), b_.mul(r.b_));
}
Element PairElem::adjoint() const { return make(a_.adjoint(), b_.adjoint()); }
Element PairElem::scale(const GQ& c) const { return make(a_.scale(c), b_.scale(c)); }
Ival PairElem::norm(long k) const { return Ival::max_join(a_.norm(k), b_.norm(k)); }

Element PairElem::place(std::size_t from, std::size_t to, std::size_t ro, std::size_t co) const {
  return make(a_.place(from, to, ro, co), b_.place(from, to, ro, co));
}

std::string PairElem::describe() const {
  return "pair(" + a_.describe() + ", " + b_.describe() + ")";
}

// ---- SymbolicElem ----

Element SymbolicElem::make(CtxPtr ctx, StarPoly p) {
  return Element(std::make_shared<SymbolicElem>(std::move(ctx), std::move(p)));
}

namespace {
const SymbolicElem& want_symbolic(const Element& o) {
  const auto* p = o.as<SymbolicElem>();
  if (!p) throw AlgebraMismatch("expected a symbolic element");
  return *p;
}
}  // namespace

Element SymbolicElem::add(const Element& o) const {
  return make(ctx_, poly_ + want_symbolic(o).poly_);
}
Element SymbolicElem::mul(const Element& o) const {
  return make(ctx_, poly_ * want_symbolic(o).poly_);
}
Element SymbolicElem::adjoint() const { return make(ctx_, poly_.adjoint()); }
Element SymbolicElem::scale(const GQ& c) const { return make(ctx_, poly_.scaled(c)); }
Ival SymbolicElem::norm(long k) const { return ctx_->norm(poly_, k).clamp_nonneg(); }

Element SymbolicElem::place(std::size_t, std::size_t, std::size_t, std::size_t) const {
  throw AlgebraMismatch("symbolic elements are amplified through grids");
}

std::string SymbolicElem::describe() const { return "symbolic(" + poly_.str() + ")"; }

// ---- GridElem ----

GridElem::GridElem(std::size_t n, std::vector<Element> cells, Element inner_zero)
    : n_(n), cells_(std::move(cells)), zero_(std::move(inner_zero)) {
  if (n_ == 0 || cells_.size() != n_ * n_) throw DimensionError("GridElem: bad cell count");
}

Element GridElem::make(std::size_t n, std::vector<Element> cells, Element inner_zero) {
  return Element(std::make_shared<GridElem>(n, std::move(cells), std::move(inner_zero)));
}

namespace {
const GridElem& want_grid(const Element& o, std::size_t n) {
  const auto* p = o.as<GridElem>();
  if (!p || p->size() != n) throw AlgebraMismatch("expected a grid element of matching size");
  return *p;
}
}  // namespace

Element GridElem::add(const Element& o) const {
  const GridElem& r = want_grid(o, n_);
  std::vector<Element> out;
  out.reserve(cells_.size());
  for (std::size_t i = 0; i < cells_.size(); ++i) out.push_back(cells_[i].add(r.cells_[i]));
  return make(n_, std::move(out), zero_);
}

Element GridElem::mul(const Element& o) const {
  const GridElem& rhs = want_grid(o, n_);
  std::vector<Element> out(n_ * n_, zero_);
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = 0; c < n_; ++c) {
      Element acc = zero_;
      for (std::size_t k = 0; k < n_; ++k) acc = acc.add(cell(r, k).mul(rhs.cell(k, c)));
      out[r * n_ + c] = acc;
    }
  return make(n_, std::move(out), zero_);
}

Element GridElem::adjoint() const {
  std::vector<Element> out(n_ * n_, zero_);
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = 0; c < n_; ++c) out[c * n_ + r] = cell(r, c).adjoint();
  return make(n_, std::move(out), zero_);
}

Element GridElem::scale(const GQ& c) const {
  std::vector<Element> out;
  out.reserve(cells_.size());
  for (const Element& x : cells_) out.push_back(x.scale(c));
  return make(n_, std::move(out), zero_);
}

Ival GridElem::norm(long k) const {
  // ||X||^2 = ||Y|| with Y = X*X selfadjoint, and ||Y^{2^m}|| = ||Y||^{2^m}.
  Element y = adjoint().mul(Element(std::make_shared<GridElem>(*this)));
  for (long m = 0;; ++m) {
    const GridElem& g = *y.as<GridElem>();
    long prec = (k + 4) << (m + 1);
    Rat lo(0), hi(0);
    for (const Element& c : g.cells_) {
      Ival nm = c.norm(prec);
      if (nm.lo > lo) lo = nm.lo;
      hi += nm.hi;
    }
    long root_iters = m + 1;
    Rat rlo = lo, rhi = hi;
    for (long i = 0; i < root_iters; ++i) {
      rlo = rlo == 0 ? Rat(0) : exact::sqrt_lower(rlo, k + 4);
      rhi = exact::sqrt_upper(rhi, k + 4);
    }
    if (rhi - rlo <= pow2(-k)) return Ival(rlo, rhi);
    y = y.mul(y);
  }
}

bool GridElem::exactly_zero() const {
  for (const Element& c : cells_)
    if (!c.exactly_zero()) return false;
  return true;
}

Element GridElem::place(std::size_t from, std::size_t to, std::size_t ro, std::size_t co) const {
  if (from == 0 || n_ % from != 0) throw DimensionError("place: bad ambient amplification");
  std::size_t unit = n_ / from, nn = to * unit;
  std::vector<Element> out(nn * nn, zero_);
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = 0; c < n_; ++c) out[(ro * unit + r) * nn + (co * unit + c)] = cell(r, c);
  return make(nn, std::move(out), zero_);
}

std::string GridElem::describe() const {
  std::ostringstream os;
  os << "grid(" << n_ << "x" << n_ << ")";
  return os.str();
}

}  // namespace ekt::cstar
