#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "ekt/cstar/element.hpp"
#include "ekt/cstar/starpoly.hpp"

namespace ekt::cstar {

enum class NormMode { computable, right_ce, left_ce };
NormMode combine_norm_modes(NormMode a, NormMode b);

// Tags for the weakly stable relation systems with instance-provided
// near-solution hints.
enum class RelTag { custom, projection, matrix_units, unital_matrix_units };

struct CPresentation;
using PresPtr = std::shared_ptr<const CPresentation>;

// Instance metadata: what kind of backing the presentation has and which
// exact capabilities it supports.  All capability members are optional.
struct InstanceInfo {
  enum class Kind { custom, scalar, amplified, direct_limit, product, unitized, suspended };
  Kind kind = Kind::custom;
  std::size_t fd_dim = 0;       // scalar family: the algebra is M_{fd_dim}(C)
  LimitPtr limit;               // direct-limit family
  PresPtr base0, base1;         // construction arguments
  std::size_t amp = 1;          // amplified: M_amp(base0)

  // Exact projection stream for M_n(A): rational points that are exact
  // projections, Murray-von Neumann complete over slots for the backed
  // instances.
  std::function<std::optional<StarPoly>(std::size_t n, const Nat& slot)> projection_points;
  // Near-solution streams for tagged relation systems whose variables live
  // in M_n(A): sys_size x sys_size matrix-unit systems (tuple length
  // sys_size^2) or single projections (sys_size = 1, tuple length 1).
  std::function<std::optional<std::vector<StarPoly>>(RelTag, std::size_t n, std::size_t sys_size,
                                                     const Nat& slot)>
      relation_hints;
  // Exact Murray-von Neumann invariant of an exact projection point of
  // M_n(A): equal invariants iff equivalent (rank- or trace-based).
  // Returns nullopt when the point is not an exact projection.
  std::function<std::optional<Rat>(std::size_t n, const StarPoly&)> mvn_invariant;
  // Realizes an invariant value as a projection seed: returns (level, slot)
  // with level a multiple of `mult` and projection_points(level, slot)
  // having the given invariant.
  std::function<std::optional<std::pair<std::size_t, Nat>>(const Rat&, std::size_t mult)>
      realize_class;
  // For unitized presentations: the scalar part of a point of M_n(A~).
  std::function<ExactMatrix(std::size_t n, const StarPoly&)> pi_matrix;
};

// Presentation of a C*-algebra: special points realized as elements of a
// concrete backing (possibly symbolic over a user oracle), a norm mode, and
// optional unit data.
struct CPresentation {
  NormMode mode = NormMode::computable;
  std::function<Element(const Nat&)> special;
  Element zero;
  std::optional<StarPoly> unit;  // rational point of 1_A when unital
  std::shared_ptr<InstanceInfo> info = std::make_shared<InstanceInfo>();

  Element eval(const StarPoly& p) const;
  Ival norm(const StarPoly& p, long k) const { return eval(p).norm(k); }
  Element one() const;

  StarPoly rational_point(const Nat& index) const { return starpoly_decode(index); }
  Nat point_index(const StarPoly& p) const { return starpoly_encode(p); }
};

// Presentation whose norms are answered by a user-supplied oracle; points
// stay symbolic.
PresPtr make_custom_presentation(NormMode mode,
                                 std::function<Ival(const StarPoly&, long)> norm_oracle,
                                 std::optional<StarPoly> unit = std::nullopt);

// A computable point: an effective 2^-k-rate approximation by rational
// points.  The Cauchy contract ||b_k - b_{k+1}|| <= 2^-k + 2^-k-1 is checked
// lazily against the norm oracle; a certified violation throws.
class PointHandle {
 public:
  PointHandle() = default;
  PointHandle(PresPtr pres, std::function<StarPoly(long)> approx,
              std::optional<StarPoly> exact = std::nullopt);
  static PointHandle exact_point(PresPtr pres, StarPoly p);

  const PresPtr& presentation() const { return pres_; }
  // Rational point within 2^-k of the point (Cauchy-checked up to k).
  StarPoly approx(long k) const;
  Element approx_elem(long k) const { return pres_->eval(approx(k)); }
  const std::optional<StarPoly>& exact() const { return exact_; }
  bool valid() const { return pres_ != nullptr; }

 private:
  PresPtr pres_;
  std::function<StarPoly(long)> approx_;
  std::optional<StarPoly> exact_;
  struct Checked;
  std::shared_ptr<Checked> checked_;
};

// Computable-point constructor: approximator(k) is a rational
// point index whose point is within 2^-k of the target.
PointHandle computable_point(PresPtr pres, std::function<Nat(long)> approximator);

// Effective enumeration of the rational points: total, surjective,
// deterministic (the fixed star-polynomial codec).
StarPoly enumerate_rational_point(const CPresentation& pres, const Nat& index);

}  // namespace ekt::cstar
