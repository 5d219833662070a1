#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ekt/codec.hpp"
#include "ekt/exact/gaussian.hpp"

namespace ekt::cstar {

using Nat = codec::Nat;
using exact::GQ;

struct MonoLetter {
  Nat gen;
  bool star = false;
  friend bool operator==(const MonoLetter& a, const MonoLetter& b) {
    return a.gen == b.gen && a.star == b.star;
  }
  friend bool operator<(const MonoLetter& a, const MonoLetter& b) {
    if (a.gen != b.gen) return a.gen < b.gen;
    return a.star < b.star;
  }
};

struct Term {
  GQ coeff;                       // nonzero
  std::vector<MonoLetter> mono;   // nonempty
};

// Constant-free *-polynomial over the special points of a presentation;
// the empty term list is the zero point.
struct StarPoly {
  std::vector<Term> terms;

  static StarPoly zero() { return {}; }
  static StarPoly generator(const Nat& g);

  bool is_zero_poly() const { return terms.empty(); }
  StarPoly adjoint() const;
  StarPoly scaled(const GQ& c) const;
  // Combines like monomials and drops zero terms; canonical term order.
  StarPoly normalized() const;
  std::string str() const;

  friend StarPoly operator+(const StarPoly& a, const StarPoly& b);
  friend StarPoly operator-(const StarPoly& a, const StarPoly& b);
  friend StarPoly operator*(const StarPoly& a, const StarPoly& b);
};

// Fixed bijection between N and star-polynomials (term lists as built, no
// normalization), giving the effective list of rational points.
Nat starpoly_encode(const StarPoly& p);
StarPoly starpoly_decode(const Nat& n);

// Symbolic injection realizing p |-> p * E_{r,c} inside M_n (1-based r, c):
// the letters of each monomial are routed through the diagonal block (r,r)
// with the final letter landing at (r,c).
StarPoly amplify_inject(const StarPoly& p, std::size_t n, std::size_t r, std::size_t c);

// Decomposes a rational point of M_n(A#) into its n x n grid of A#-points,
// collapsing matrix-unit chains (entries row-major).
std::vector<StarPoly> amplified_grid(const StarPoly& p, std::size_t n);

}  // namespace ekt::cstar
