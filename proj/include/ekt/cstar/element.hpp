#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "ekt/exact/interval.hpp"
#include "ekt/exact/matrix.hpp"
#include "ekt/cstar/starpoly.hpp"

namespace ekt::cstar {

using exact::ExactMatrix;
using exact::Ival;
using exact::Rat;

// Dimension data of a direct limit of matrix algebras along canonical
// embeddings: n_j | n_{j+1}.  Stage dimensions are arbitrary-precision
// (matrices are only materialized at stages whose dimension fits in a
// machine word); identity is by shared pointer.
class DirectLimit {
 public:
  explicit DirectLimit(std::function<Nat(std::size_t)> dim_fn) : dim_fn_(std::move(dim_fn)) {}
  Nat dim(std::size_t j) const;  // by value: the memo may reallocate
  std::size_t dim_u64(std::size_t j) const;  // throws when unmaterializable
  bool materializable(std::size_t j) const;
  // Least stage >= from whose dimension is divisible by m; searches up to
  // stage `limit` and throws StagingError past it.
  std::size_t stage_with_multiple(const Nat& m, std::size_t from = 0,
                                  std::size_t limit = 4096) const;

 private:
  std::function<Nat(std::size_t)> dim_fn_;
  mutable std::vector<Nat> cache_;
  mutable std::mutex mu_;
};
using LimitPtr = std::shared_ptr<const DirectLimit>;

class Element;

class ElementImpl {
 public:
  virtual ~ElementImpl() = default;
  virtual Element add(const Element& o) const = 0;
  virtual Element mul(const Element& o) const = 0;
  virtual Element adjoint() const = 0;
  virtual Element scale(const GQ& c) const = 0;
  virtual Ival norm(long k) const = 0;
  virtual bool exactly_zero() const = 0;
  // Views this as an element of M_from(X) and embeds it into M_to(X) with
  // block offset (ro, co) in ambient units; everything else is zero.
  virtual Element place(std::size_t from, std::size_t to, std::size_t ro,
                        std::size_t co) const = 0;
  virtual std::string describe() const = 0;
};

// Immutable value handle for a point of a concrete *-algebra.
class Element {
 public:
  Element() = default;
  explicit Element(std::shared_ptr<const ElementImpl> impl) : impl_(std::move(impl)) {}

  bool valid() const { return impl_ != nullptr; }
  const ElementImpl& impl() const;

  Element add(const Element& o) const { return impl().add(o); }
  Element sub(const Element& o) const { return impl().add(o.scale(GQ::integer(-1))); }
  Element mul(const Element& o) const { return impl().mul(o); }
  Element adjoint() const { return impl().adjoint(); }
  Element scale(const GQ& c) const { return impl().scale(c); }
  Element zero_like() const { return scale(GQ()); }
  Ival norm(long k) const { return impl().norm(k).clamp_nonneg(); }
  bool exactly_zero() const { return impl().exactly_zero(); }
  Element place(std::size_t from, std::size_t to, std::size_t ro, std::size_t co) const {
    return impl().place(from, to, ro, co);
  }
  // Direct sum at ambient amplifications (na, nb).
  static Element dir_sum(const Element& a, std::size_t na, const Element& b, std::size_t nb);
  std::string describe() const { return valid() ? impl().describe() : "<null>"; }

  template <class T>
  const T* as() const {
    return dynamic_cast<const T*>(impl_.get());
  }

 private:
  std::shared_ptr<const ElementImpl> impl_;
};

// ---- concrete backings ----

// Element of a matrix algebra M_d(C), exactly represented.
class MatrixElem final : public ElementImpl {
 public:
  explicit MatrixElem(ExactMatrix m) : m_(std::move(m)) {}
  static Element make(ExactMatrix m);
  const ExactMatrix& matrix() const { return m_; }

  Element add(const Element& o) const override;
  Element mul(const Element& o) const override;
  Element adjoint() const override;
  Element scale(const GQ& c) const override;
  Ival norm(long k) const override;
  bool exactly_zero() const override { return m_.is_zero(); }
  Element place(std::size_t, std::size_t, std::size_t, std::size_t) const override;
  std::string describe() const override;

 private:
  ExactMatrix m_;
};

// Element of (an amplification of) a direct limit, represented exactly at
// some stage: rep has size amp * n_stage.
class StageElem final : public ElementImpl {
 public:
  StageElem(LimitPtr limit, std::size_t stage, ExactMatrix rep);
  static Element make(LimitPtr limit, std::size_t stage, ExactMatrix rep);

  const LimitPtr& limit() const { return limit_; }
  std::size_t stage() const { return stage_; }
  const ExactMatrix& rep() const { return rep_; }
  std::size_t amp() const;
  ExactMatrix rep_at_stage(std::size_t stage) const;  // stage >= stage_

  Element add(const Element& o) const override;
  Element mul(const Element& o) const override;
  Element adjoint() const override;
  Element scale(const GQ& c) const override;
  Ival norm(long k) const override;
  bool exactly_zero() const override { return rep_.is_zero(); }
  Element place(std::size_t, std::size_t, std::size_t, std::size_t) const override;
  std::string describe() const override;

 private:
  LimitPtr limit_;
  std::size_t stage_;
  ExactMatrix rep_;
};

// Piecewise-polynomial curve on [0,1] with coefficients in an inner algebra;
// norm is the certified supremum over t.  Affine segments are evaluated at
// their endpoints (the norm is convex there), higher degrees by certified
// branch and bound.
class CurveElem final : public ElementImpl {
 public:
  CurveElem(std::vector<Rat> breakpoints, std::vector<std::vector<Element>> segs,
            Element inner_zero);
  static Element make(std::vector<Rat> breakpoints, std::vector<std::vector<Element>> segs,
                      Element inner_zero);
  static Element constant(const Element& value);

  const std::vector<Rat>& breakpoints() const { return bps_; }
  Element eval(const Rat& t) const;
  Element boundary_value() const { return eval(Rat(0)); }
  const Element& inner_zero() const { return zero_; }

  Element add(const Element& o) const override;
  Element mul(const Element& o) const override;
  Element adjoint() const override;
  Element scale(const GQ& c) const override;
  Ival norm(long k) const override;
  bool exactly_zero() const override;
  Element place(std::size_t, std::size_t, std::size_t, std::size_t) const override;
  std::string describe() const override;

 private:
  std::vector<Rat> bps_;                     // 0 = t_0 < ... < t_m = 1
  std::vector<std::vector<Element>> segs_;   // coefficient lists in the global variable t
  Element zero_;
};

// Ordered pair (a, b) in a product algebra A x B; norm is the max.
class PairElem final : public ElementImpl {
 public:
  PairElem(Element a, Element b) : a_(std::move(a)), b_(std::move(b)) {}
  static Element make(Element a, Element b);
  const Element& first() const { return a_; }
  const Element& second() const { return b_; }

  Element add(const Element& o) const override;
  Element mul(const Element& o) const override;
  Element adjoint() const override;
  Element scale(const GQ& c) const override;
  Ival norm(long k) const override;
  bool exactly_zero() const override { return a_.exactly_zero() && b_.exactly_zero(); }
  Element place(std::size_t, std::size_t, std::size_t, std::size_t) const override;
  std::string describe() const override;

 private:
  Element a_, b_;
};

// Rational point of an abstract presentation, kept symbolic; the norm is
// answered by the presentation's oracle.
class SymbolicElem final : public ElementImpl {
 public:
  struct Context {
    std::function<Ival(const StarPoly&, long)> norm;
  };
  using CtxPtr = std::shared_ptr<const Context>;

  SymbolicElem(CtxPtr ctx, StarPoly p) : ctx_(std::move(ctx)), poly_(std::move(p)) {}
  static Element make(CtxPtr ctx, StarPoly p);
  const StarPoly& poly() const { return poly_; }

  Element add(const Element& o) const override;
  Element mul(const Element& o) const override;
  Element adjoint() const override;
  Element scale(const GQ& c) const override;
  Ival norm(long k) const override;
  bool exactly_zero() const override { return poly_.normalized().is_zero_poly(); }
  Element place(std::size_t, std::size_t, std::size_t, std::size_t) const override;
  std::string describe() const override;

 private:
  CtxPtr ctx_;
  StarPoly poly_;
};

// n x n matrix over an arbitrary inner algebra.  The norm is computed from
// entry-norm bounds of iterated squares of X*X, using
// ||Y||_max <= ||Y|| <= ||Y||_1 and the C*-identity ||Y^2|| = ||Y||^2.
class GridElem final : public ElementImpl {
 public:
  GridElem(std::size_t n, std::vector<Element> cells, Element inner_zero);
  static Element make(std::size_t n, std::vector<Element> cells, Element inner_zero);
  std::size_t size() const { return n_; }
  const Element& cell(std::size_t r, std::size_t c) const { return cells_[r * n_ + c]; }

  Element add(const Element& o) const override;
  Element mul(const Element& o) const override;
  Element adjoint() const override;
  Element scale(const GQ& c) const override;
  Ival norm(long k) const override;
  bool exactly_zero() const override;
  Element place(std::size_t, std::size_t, std::size_t, std::size_t) const override;
  std::string describe() const override;

 private:
  std::size_t n_;
  std::vector<Element> cells_;
  Element zero_;
};

}  // namespace ekt::cstar
