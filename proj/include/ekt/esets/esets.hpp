#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ekt/cstar/constructions.hpp"
#include "ekt/cstar/presentation.hpp"
#include "ekt/words/word.hpp"

namespace ekt::esets {

using cstar::Element;
using cstar::PointHandle;
using cstar::PresPtr;
using cstar::RelTag;
using cstar::StarPoly;
using exact::GQ;
using exact::Ival;
using exact::Rat;
using codec::Nat;
using words::Fuel;
using words::Tri;

// Open ball centered at a rational point (point index; for subsets of
// (A#)^N the center is the list code of the component point indexes).
struct RationalBall {
  Nat center;
  Rat radius;
  RationalBall() : radius(1) {}
  RationalBall(Nat c, Rat r);
  std::string str() const;
};

template <typename T>
using Enumerator = std::function<std::optional<T>(const Nat& slot)>;

// C.e. open set: a union of enumerated balls.
struct CeOpenSet {
  PresPtr pres;
  Enumerator<RationalBall> balls;
};

// C.e. closed set: enumerated balls meeting the set (here: the certified
// S_0 family of the defining relations).
struct CeClosedSet {
  PresPtr pres;
  std::size_t arity = 1;
  Enumerator<RationalBall> balls;
};

// Certified ball containment: B(c0;r0) <= B(c1;r1) iff ||c0-c1|| + r0 < r1.
// Each fuel unit is one interval refinement; ties stay Unknown.
Tri ball_subset(const PresPtr& pres, const RationalBall& b0, const RationalBall& b1, Fuel fuel);

// ---- computably weakly stable relation systems ----

struct RelPoly {
  struct VarLetter {
    std::size_t var;  // 0-based variable index
    bool star = false;
  };
  struct VTerm {
    GQ coeff;
    std::vector<VarLetter> mono;  // nonempty
  };
  std::vector<VTerm> terms;
  // Optional affine part: a fixed rational point of the ambient presentation
  // added to the variable polynomial (e.g. -1_A in unital relations).
  std::optional<StarPoly> affine;
};

struct RelationSystem {
  std::size_t arity = 1;
  std::vector<RelPoly> polys;
  std::vector<Rat> bounds;             // ||x_j|| <= C_j
  std::function<long(long)> modulus;   // modulus of weak stability g
  RelTag tag = RelTag::custom;
  std::size_t sys_size = 1;            // matrix-unit system size for tagged hints
};

// {x = x*, x^2 = x, ||x|| <= 1} with the default modulus g(k) = k + 3.
RelationSystem projection_relations();
// n x n matrix-unit relations (x_rs* = x_sr, x_rs x_r's' = delta_{s r'} x_rs');
// the unital variant adds sum_r x_rr = 1 via the presentation's unit point and
// uses g(k) = k + 3 + ceil(log2(n+1)).
RelationSystem matrix_unit_relations(std::size_t n, bool unital, const StarPoly& unit_point);

// Certified residual interval max_i ||p_i(a)|| joined with the bound
// excesses, at norm precision k.
Ival relation_residual(const PresPtr& pres, const RelationSystem& rel,
                       const std::vector<StarPoly>& tuple, long k);

// The S_0 enumeration: balls B(a; 2^-k) whose certified residual passes the
// weak-stability test.  Instance hint streams are interleaved with the
// generic point scan; every emitted ball is validated the same way.
CeClosedSet ce_closed_from_relations(PresPtr pres, const RelationSystem& rel);

// Tuple center coding.
Nat tuple_center(const std::vector<StarPoly>& pts);
std::vector<StarPoly> tuple_points(const Nat& center, std::size_t arity);

// ---- intersection search ----

struct IntersectionResult {
  std::optional<PointHandle> point;
  Fuel spent = 0;
  std::string note;
};

// Nested-ball search for a computable point of U cap C (radii < 1, 1/2, ...):
// stages 0..k are run eagerly with the given per-stage fuel; the resulting
// handle extends the chain on demand.
IntersectionResult find_point_in_intersection(CeOpenSet u, CeClosedSet c, long k,
                                              Fuel per_stage_fuel);

// ---- Murray-von Neumann semidecision ----

struct MvnCertificate {
  std::size_t n = 1;  // inputs live in M_n(A); the chain in M_{4n}(A)
  RationalBall start, end;
  std::vector<RationalBall> chain;
  std::string serialize() const;
};

struct MvnResult {
  Tri verdict = Tri::Unknown;
  std::optional<MvnCertificate> certificate;
  Fuel spent = 0;
  std::size_t balls_seen = 0, edges_checked = 0;
};

// Dovetailed chain search in M_{4n}(A#) over the projection S_0 stream.
// Equivalent is returned only with a re-verified chain certificate.
MvnResult mvn_semidecide(PresPtr a, std::size_t n, const PointHandle& p, const PointHandle& q,
                         Fuel fuel);

// Recomputes every chain condition of a certificate.
bool mvn_verify_certificate(PresPtr a, std::size_t n, const PointHandle& p, const PointHandle& q,
                            const MvnCertificate& cert);

// Reinterprets a rational point of M_n(A#) (canonical position codes) as a
// point of M_m(A#) for m >= n, i.e. pads with zero blocks.
StarPoly pad_matrix_point(const StarPoly& p, std::size_t n, std::size_t m);

// Level-aware padding: points of M_from(A) are A#-coded when from == 1 and
// triple-coded otherwise; the result is always a triple-coded M_to point.
StarPoly pad_point_level(const StarPoly& p, std::size_t from, std::size_t to);

}  // namespace ekt::esets
