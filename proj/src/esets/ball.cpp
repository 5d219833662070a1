#include <sstream>

#include "ekt/error.hpp"
#include "ekt/esets/esets.hpp"

namespace ekt::esets {

RationalBall::RationalBall(Nat c, Rat r) : center(std::move(c)), radius(std::move(r)) {
  if (radius <= 0) throw Error("RationalBall: radius must be positive");
}

std::string RationalBall::str() const {
  std::ostringstream os;
  os << "B(" << center.get_str() << "; " << radius.get_str() << ")";
  return os.str();
}

Nat tuple_center(const std::vector<StarPoly>& pts) {
  std::vector<Nat> codes;
  codes.reserve(pts.size());
  for (const StarPoly& p : pts) codes.push_back(cstar::starpoly_encode(p));
  return codec::list_encode(codes);
}

std::vector<StarPoly> tuple_points(const Nat& center, std::size_t arity) {
  std::vector<Nat> codes = codec::list_decode(center);
  if (codes.size() != arity) throw Error("tuple_points: arity mismatch");
  std::vector<StarPoly> pts;
  pts.reserve(arity);
  for (const Nat& c : codes) pts.push_back(cstar::starpoly_decode(c));
  return pts;
}

namespace {

// Max norm over the tuple components of the difference of two centers.
Ival center_distance(const PresPtr& pres, std::size_t arity, const Nat& c0, const Nat& c1,
                     long k) {
  std::vector<StarPoly> a = tuple_points(c0, arity), b = tuple_points(c1, arity);
  Ival out = Ival::point(Rat(0));
  for (std::size_t i = 0; i < arity; ++i) out = Ival::max_join(out, pres->norm(a[i] - b[i], k));
  return out;
}

}  // namespace

Tri ball_subset(const PresPtr& pres, const RationalBall& b0, const RationalBall& b1, Fuel fuel) {
  for (Fuel step = 0; step <= fuel && step < 16; ++step) {
    long k = 3 * static_cast<long>(step + 1);
    Ival d = center_distance(pres, 1, b0.center, b1.center, k);
    if (d.hi + b0.radius < b1.radius) return Tri::Yes;
    if (d.lo + b0.radius >= b1.radius) return Tri::No;
  }
  return Tri::Unknown;
}

StarPoly pad_point_level(const StarPoly& p, std::size_t from, std::size_t to) {
  if (from == 1) return cstar::amplify_inject(p, to, 1, 1);
  return pad_matrix_point(p, from, to);
}

StarPoly pad_matrix_point(const StarPoly& p, std::size_t n, std::size_t m) {
  if (m < n) throw DimensionError("pad_matrix_point: target smaller than source");
  StarPoly out;
  for (const cstar::Term& t : p.terms) {
    cstar::Term u;
    u.coeff = t.coeff;
    for (const cstar::MonoLetter& l : t.mono) {
      Nat g, a, b;
      codec::untriple(l.gen, g, a, b);
      std::size_t r = codec::fold_index(a, n), c = codec::fold_index(b, n);
      u.mono.push_back(cstar::MonoLetter{
          codec::triple(g, Nat(static_cast<long>(r - 1)), Nat(static_cast<long>(c - 1))), l.star});
    }
    out.terms.push_back(std::move(u));
  }
  return out.normalized();
}

}  // namespace ekt::esets
