#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ekt/cat/categoricity.hpp"

using namespace ekt::cat;
using namespace ekt::uhf;
using namespace ekt::cstar;
using namespace ekt::exact;
using ekt::codec::Nat;

namespace {

UhfCertificate powers_cert(unsigned long base) {
  auto [pres, cert] = presentation_from_supernatural(
      parse_supernatural(base == 2 ? "2 inf\n" : (base == 4 ? "2 inf\n" : "3 inf\n")));
  if (base == 4) {
    // dims 4^j rather than 2^j
    auto limit = std::make_shared<DirectLimit>([](std::size_t j) {
      Nat n;
      mpz_ui_pow_ui(n.get_mpz_t(), 4, static_cast<unsigned long>(j));
      return n;
    });
    PresPtr p4 = limit_presentation(limit);
    UhfCertificate c4;
    c4.limit = limit;
    c4.pres = p4;
    c4.canonical = true;
    c4.embed = [limit](std::size_t j, std::size_t amp, const ExactMatrix& m) {
      return StageElem::make(limit, j, m);
    };
    c4.embed_point = [limit](std::size_t j, std::size_t amp, const ExactMatrix& m) {
      return limit_matrix_point(*limit, amp, j, m);
    };
    return c4;
  }
  if (base == 3) {
    auto limit = std::make_shared<DirectLimit>([](std::size_t j) {
      Nat n;
      mpz_ui_pow_ui(n.get_mpz_t(), 3, static_cast<unsigned long>(j));
      return n;
    });
    PresPtr p3 = limit_presentation(limit);
    UhfCertificate c3;
    c3.limit = limit;
    c3.pres = p3;
    c3.canonical = true;
    c3.embed_point = [limit](std::size_t j, std::size_t amp, const ExactMatrix& m) {
      return limit_matrix_point(*limit, amp, j, m);
    };
    return c3;
  }
  return cert;
}

}  // namespace

TEST_CASE("interleave of 2^j against 4^j matches the hand computation") {
  UhfCertificate a = powers_cert(2), b = powers_cert(4);
  InterleaveResult r = interleave(a, b, 6);
  REQUIRE(r.table);
  // minimal choices: l_j ascends one stage at a time while k_{j+1} must
  // absorb 4^{l_j}, so k doubles its step once the 4-powers pull ahead
  std::vector<std::size_t> want_k{0, 1, 2, 4, 6, 8}, want_l{0, 1, 2, 3, 4, 5};
  CHECK(r.table->k_seq == want_k);
  CHECK(r.table->l_seq == want_l);
  for (std::size_t j = 0; j < 6; ++j) {
    CHECK(b.limit->dim(r.table->l_seq[j]) % a.limit->dim(r.table->k_seq[j]) == 0);
    if (j + 1 < 6) CHECK(a.limit->dim(r.table->k_seq[j + 1]) % b.limit->dim(r.table->l_seq[j]) == 0);
  }
}

TEST_CASE("interleave of identical certificates is the identity table") {
  UhfCertificate a = powers_cert(2);
  InterleaveResult r = interleave(a, a, 5);
  REQUIRE(r.table);
  for (std::size_t j = 0; j < 5; ++j) {
    CHECK(r.table->k_seq[j] == j);
    CHECK(r.table->l_seq[j] == j);
  }
}

TEST_CASE("interleave suspects a mismatch between 2^j and 3^j") {
  UhfCertificate a = powers_cert(2), b = powers_cert(3);
  InterleaveResult r = interleave(a, b, 3, 64);
  CHECK_FALSE(r.table);
  CHECK(r.mismatch_note.find("mismatch suspected") != std::string::npos);
}

TEST_CASE("iso_approx maps the unit to the unit") {
  UhfCertificate a = powers_cert(2), b = powers_cert(4);
  IsoResult r = iso_approx(a, b, *a.pres->unit, 8);
  REQUIRE(r.image);
  Ival d = b.pres->norm(*r.image - *b.pres->unit, 10);
  CHECK(d.hi <= pow2(-8));
}

TEST_CASE("iso_approx preserves traces exactly on stage projections") {
  UhfCertificate a = powers_cert(2), b = powers_cert(4);
  StarPoly p = a.embed_point(1, 1, ExactMatrix::unit(2, 1, 1));
  IsoResult r = iso_approx(a, b, p, 8);
  REQUIRE(r.image);
  CHECK(trace(b, *r.image, 12).exact == GQ(Rat(1, 2)));
}

TEST_CASE("iso_approx is an approximate isometry and homomorphism on samples") {
  UhfCertificate a = powers_cert(2), b = powers_cert(4);
  std::vector<StarPoly> pts;
  pts.push_back(a.embed_point(1, 1, ExactMatrix::unit(2, 1, 2)));
  pts.push_back(a.embed_point(2, 1, ExactMatrix::unit(4, 1, 1) + ExactMatrix::unit(4, 2, 3)));
  pts.push_back(a.embed_point(2, 1,
                              ExactMatrix::unit(4, 1, 1).scale(GQ(Rat(1, 2))) +
                                  ExactMatrix::unit(4, 3, 4).scale(GQ(Rat(0), Rat(1)))));
  for (const StarPoly& p : pts) {
    IsoResult r = iso_approx(a, b, p, 8);
    REQUIRE(r.image);
    CHECK(a.pres->norm(p, 10).intersects(b.pres->norm(*r.image, 10)));
  }
  // multiplicativity and adjoints on a pair
  IsoResult r0 = iso_approx(a, b, pts[0], 8);
  IsoResult r1 = iso_approx(a, b, pts[1], 8);
  IsoResult rp = iso_approx(a, b, pts[0] * pts[1], 8);
  REQUIRE((r0.image && r1.image && rp.image));
  Ival dm = b.pres->norm(*rp.image - *r0.image * *r1.image, 10);
  CHECK(dm.hi <= pow2(-6));
  IsoResult ra = iso_approx(a, b, pts[0].adjoint(), 8);
  Ival da = b.pres->norm(*ra.image - r0.image->adjoint(), 10);
  CHECK(da.hi <= pow2(-6));
}

TEST_CASE("iso_approx round trip is the identity on samples") {
  UhfCertificate a = powers_cert(2), b = powers_cert(4);
  StarPoly p = a.embed_point(2, 1, ExactMatrix::unit(4, 2, 2));
  IsoResult fwd = iso_approx(a, b, p, 8);
  REQUIRE(fwd.image);
  IsoResult back = iso_approx(b, a, *fwd.image, 8);
  REQUIRE(back.image);
  Ival d = a.pres->norm(*back.image - p, 12);
  CHECK(d.hi <= pow2(-6));
}
