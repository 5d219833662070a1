#pragma once

#include <utility>
#include <vector>

#include "ekt/cstar/presentation.hpp"

namespace ekt::cstar {

// The standard presentation of C: special points are the Gaussian rationals.
PresPtr scalar_presentation();

// Standard presentation of M_d(C) (the d-fold matrix amplification of the
// standard presentation of C).
PresPtr fd_presentation(std::size_t d);

// Canonical presentation of the direct limit of M_{n_j}(C) along canonical
// embeddings; special points are the stage matrix-unit images.
PresPtr limit_presentation(LimitPtr lim);

// Matrix amplification M_n(A#): the k-th special point decodes through the
// fixed triple pairing as v_{phi0(k)} E_{phi1(n,k), phi2(n,k)}.
PresPtr amplify(PresPtr a, std::size_t n);

// Product presentation A# x B# with max norm; special points pair rational
// points of the factors.
PresPtr product(PresPtr a, PresPtr b);

// Unitization presentation: <m,k>-th special point is (a_m, alpha_k).
// Shipped for unital presentations and for suspensions of backed unital
// presentations.
PresPtr unitize(PresPtr a);

// Suspension presentation SA: <m,k>-th special point is f_m (x) a_k with f_m
// a rational polygonal curve vanishing at 0 and 1.
PresPtr suspend(PresPtr a);

// ---- point builders and evaluators ----

// Rational point of M_n(C#) with exact value m (n x n).
StarPoly scalar_matrix_point(std::size_t n, const ExactMatrix& m);
// Exact value of a rational point of M_n(C#).
ExactMatrix eval_scalar_point(const StarPoly& p, std::size_t n);

// Rational point of M_n(A#) (A# the canonical limit presentation) whose
// value is the stage-j image of m (m of size n * dim(j)).
StarPoly limit_matrix_point(const DirectLimit& lim, std::size_t n, std::size_t stage,
                            const ExactMatrix& m);
// Stage representative of a rational point of M_n(limit#).
std::pair<std::size_t, ExactMatrix> eval_limit_point(const LimitPtr& lim, const StarPoly& p,
                                                     std::size_t n);

// Point-of-M_{n*k}(A#)  <->  point-of-M_n(M_k(A)#) letter recodings.
StarPoly recode_amplified(const StarPoly& p, std::size_t n, std::size_t k);
StarPoly flatten_amplified(const StarPoly& p, std::size_t n, std::size_t k);

// Exact-projection seed matrices in M_D(C): 0/1 diagonals plus 3-4-5
// rotations of them in adjacent coordinate planes, slot-indexed.
std::optional<ExactMatrix> seed_projection_matrix(std::size_t D, const Nat& slot);

// ---- polygonal curves ----

// Interior nodes (t_i, v_i) of a rational polygonal curve vanishing at the
// endpoints; the full node list is (0,0), interior..., (1,0).
using PolygonNodes = std::vector<std::pair<Rat, GQ>>;
PolygonNodes polygon_decode(const Nat& m);
Nat polygon_encode(const PolygonNodes& interior);
// The curve f (x) value, as an element of the suspension backing.
Element polygon_tensor(const PolygonNodes& interior, const Element& value);

// ---- computable *-homomorphisms ----

struct StarHom {
  PresPtr dom, cod;
  // Rational point of cod within 2^-k of the image of the given point.
  std::function<StarPoly(const StarPoly&, long)> apply;
  bool exact = false;
};

StarHom identity_hom(PresPtr a);
// Matrix amplification of a *-homomorphism, acting entrywise on the grid.
StarHom amplify_hom(const StarHom& h, std::size_t n);

}  // namespace ekt::cstar
