#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ekt/error.hpp"
#include "ekt/esets/esets.hpp"
#include "ekt/exact/opnorm.hpp"
#include "ekt/fd/fd.hpp"

using namespace ekt::esets;
using namespace ekt::cstar;
using namespace ekt::exact;
using ekt::codec::Nat;
namespace codec = ekt::codec;

namespace {

RationalBall scalar_ball(const GQ& center, const Rat& r) {
  StarPoly c = center.is_zero() ? StarPoly::zero()
                                : StarPoly::generator(codec::gq_encode(center));
  return RationalBall(tuple_center({c}), r);
}

CeOpenSet whole_space(PresPtr pres) {
  CeOpenSet u;
  u.pres = pres;
  u.balls = [](const Nat& slot) -> std::optional<RationalBall> {
    long e = static_cast<long>(codec::fold_index(slot, 20));
    return RationalBall(tuple_center({StarPoly::zero()}), pow2(e));
  };
  return u;
}

CeOpenSet single_ball(PresPtr pres, RationalBall b) {
  CeOpenSet u;
  u.pres = std::move(pres);
  u.balls = [b](const Nat& slot) -> std::optional<RationalBall> {
    if (slot == 0) return b;
    return std::nullopt;
  };
  return u;
}

}  // namespace

TEST_CASE("ball_subset on scalar balls") {
  PresPtr c = scalar_presentation();
  RationalBall b01 = scalar_ball(GQ(), Rat(1));
  RationalBall b02 = scalar_ball(GQ(), Rat(2));
  CHECK(ball_subset(c, b01, b02, 8) == Tri::Yes);
  CHECK(ball_subset(c, b02, b01, 8) == Tri::No);
  RationalBall half = scalar_ball(GQ(Rat(1, 2)), Rat(1, 4));
  CHECK(ball_subset(c, half, b01, 8) == Tri::Yes);
  // boundary tie: B(1/2; 1/2) vs B(0; 1): 1/2 + 1/2 = 1 is not < 1
  RationalBall tie = scalar_ball(GQ(Rat(1, 2)), Rat(1, 2));
  CHECK(ball_subset(c, tie, b01, 8) != Tri::Yes);
}

TEST_CASE("trivial relation system emits balls around every point") {
  PresPtr c = scalar_presentation();
  RelationSystem rel;
  rel.arity = 1;
  RelPoly zero;  // x - x
  zero.terms.push_back({GQ::integer(1), {{0, false}}});
  zero.terms.push_back({GQ::integer(-1), {{0, false}}});
  rel.polys = {zero};
  rel.bounds = {Rat(1000)};
  rel.modulus = [](long k) { return k; };
  CeClosedSet s = ce_closed_from_relations(c, rel);
  int emitted = 0;
  for (unsigned long i = 0; i < 2000; i += 2)  // generic path only
    if (auto b = s.balls(Nat(i))) ++emitted;
  CHECK(emitted > 50);
}

TEST_CASE("projection relations on C cluster near 0 and 1") {
  PresPtr c = scalar_presentation();
  CeClosedSet s = ce_closed_from_relations(c, projection_relations());
  int emitted = 0;
  for (unsigned long i = 0; i < 4000; ++i) {
    auto b = s.balls(Nat(i));
    if (!b) continue;
    ++emitted;
    GQ v = eval_scalar_point(tuple_points(b->center, 1)[0], 1).at(0, 0);
    Rat r2 = b->radius * b->radius;
    bool near0 = v.norm_sq() < r2;
    GQ v1 = v - GQ::integer(1);
    bool near1 = v1.norm_sq() < r2;
    CHECK((near0 || near1));
  }
  CHECK(emitted > 10);
}

TEST_CASE("emitted balls pass an independent residual recheck") {
  PresPtr a = fd_presentation(2);
  RelationSystem rel = projection_relations();
  CeClosedSet s = ce_closed_from_relations(a, rel);
  int emitted = 0;
  for (unsigned long i = 0; i < 3000 && emitted < 12; ++i) {
    auto b = s.balls(Nat(i));
    if (!b) continue;
    ++emitted;
    long k = 2;
    while (pow2(-k) > b->radius) ++k;
    long g = rel.modulus(k);
    Ival res = relation_residual(a, rel, tuple_points(b->center, 1), g + 6);
    CHECK(res.hi < pow2(-g));
  }
  CHECK(emitted >= 12);
}

TEST_CASE("unital matrix-unit relations on M_2(C) admit exact systems") {
  PresPtr a = fd_presentation(2);
  RelationSystem rel = matrix_unit_relations(2, true, *a->unit);
  CeClosedSet s = ce_closed_from_relations(a, rel);
  int emitted = 0;
  for (unsigned long i = 1; i < 600 && emitted == 0; i += 2) {  // hint path
    auto b = s.balls(Nat(i));
    if (!b) continue;
    ++emitted;
    auto tuple = tuple_points(b->center, 4);
    // the hinted system is the canonical exact one
    Ival res = relation_residual(a, rel, tuple, 12);
    CHECK(res.hi == 0);
  }
  CHECK(emitted == 1);
}

TEST_CASE("find_point_in_intersection: ball near 1 meets the projections of C") {
  PresPtr c = scalar_presentation();
  CeClosedSet proj = ce_closed_from_relations(c, projection_relations());
  RationalBall u = scalar_ball(GQ(Rat(9, 10)), Rat(1, 5));
  IntersectionResult r = find_point_in_intersection(single_ball(c, u), proj, 6, 60000);
  REQUIRE(r.point);
  StarPoly approx = r.point->approx(6);
  GQ v = eval_scalar_point(approx, 1).at(0, 0);
  GQ diff = v - GQ::integer(1);
  CHECK(diff.norm_sq() <= pow2(-10));
}

TEST_CASE("find_point_in_intersection: whole space and {0}") {
  PresPtr c = scalar_presentation();
  RelationSystem zero_rel;
  zero_rel.arity = 1;
  RelPoly idp;
  idp.terms.push_back({GQ::integer(1), {{0, false}}});
  zero_rel.polys = {idp};
  zero_rel.bounds = {Rat(1)};
  zero_rel.modulus = [](long k) { return k; };
  CeClosedSet zset = ce_closed_from_relations(c, zero_rel);
  IntersectionResult r = find_point_in_intersection(whole_space(c), zset, 5, 60000);
  REQUIRE(r.point);
  GQ v = eval_scalar_point(r.point->approx(5), 1).at(0, 0);
  CHECK(v.norm_sq() <= pow2(-8));
}

TEST_CASE("find_point_in_intersection: projections of M_2 near E11") {
  PresPtr a = fd_presentation(2);
  CeClosedSet proj = ce_closed_from_relations(a, projection_relations());
  StarPoly e11 = scalar_matrix_point(2, ExactMatrix::unit(2, 1, 1));
  RationalBall u(tuple_center({e11}), Rat(1, 8));
  IntersectionResult r = find_point_in_intersection(single_ball(a, u), proj, 6, 120000);
  REQUIRE(r.point);
  Ival d = a->norm(r.point->approx(6) - e11, 10);
  CHECK(d.hi <= Rat(1, 4));
}

TEST_CASE("mvn_semidecide: equal units of C are equivalent") {
  PresPtr c = scalar_presentation();
  PointHandle h = PointHandle::exact_point(c, *c->unit);
  MvnResult r = mvn_semidecide(c, 1, h, h, 4000);
  CHECK(r.verdict == Tri::Yes);
  REQUIRE(r.certificate);
  CHECK(mvn_verify_certificate(c, 1, h, h, *r.certificate));
  CHECK(!r.certificate->serialize().empty());
}

TEST_CASE("mvn_semidecide: E11 ~ E22 in M_2(C)") {
  PresPtr c = scalar_presentation();
  PresPtr m2 = amplify(c, 2);
  PointHandle p = PointHandle::exact_point(m2, scalar_matrix_point(2, ExactMatrix::unit(2, 1, 1)));
  PointHandle q = PointHandle::exact_point(m2, scalar_matrix_point(2, ExactMatrix::unit(2, 2, 2)));
  MvnResult r = mvn_semidecide(c, 2, p, q, 20000);
  CHECK(r.verdict == Tri::Yes);
  REQUIRE(r.certificate);
  CHECK(mvn_verify_certificate(c, 2, p, q, *r.certificate));
}

TEST_CASE("mvn_semidecide: 0 and 1 are never declared equivalent") {
  PresPtr c = scalar_presentation();
  PointHandle z = PointHandle::exact_point(c, StarPoly::zero());
  PointHandle u = PointHandle::exact_point(c, *c->unit);
  MvnResult r = mvn_semidecide(c, 1, z, u, 3000);
  CHECK(r.verdict == Tri::Unknown);
  CHECK(r.spent >= 3000);
}

TEST_CASE("mvn_semidecide rejects non-projection inputs") {
  PresPtr c = scalar_presentation();
  PointHandle h = PointHandle::exact_point(c, c->unit->scaled(GQ(Rat(1, 2))));
  CHECK_THROWS_AS(mvn_semidecide(c, 1, h, h, 100), ekt::Error);
}

TEST_CASE("intersection points satisfy the Cauchy contract") {
  PresPtr c = scalar_presentation();
  CeClosedSet proj = ce_closed_from_relations(c, projection_relations());
  RationalBall u = scalar_ball(GQ(Rat(9, 10)), Rat(1, 5));
  IntersectionResult r = find_point_in_intersection(single_ball(c, u), proj, 4, 60000);
  REQUIRE(r.point);
  // approx(k) at increasing k stays consistent; the handle's internal check
  // throws on violation.
  for (long k = 1; k <= 8; ++k) (void)r.point->approx(k);
  CHECK(true);
}
