#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ekt/error.hpp"
#include "ekt/fd/fd.hpp"
#include "ekt/uhf/uhf.hpp"

using namespace ekt::uhf;
using namespace ekt::cstar;
using namespace ekt::exact;
using ekt::codec::Nat;
namespace codec = ekt::codec;

namespace {

Supernatural two_inf() { return Supernatural::from_exponents({{2, std::nullopt}}); }

// Legendre's formula for the p-adic valuation of n!.
unsigned long legendre(unsigned long n, unsigned long p) {
  unsigned long v = 0;
  for (unsigned long q = p; q <= n; q *= p) {
    v += n / q;
    if (q > n / p) break;
  }
  return v;
}

}  // namespace

TEST_CASE("presentation_from_supernatural dims") {
  auto [pres2, cert2] = presentation_from_supernatural(two_inf());
  for (std::size_t j = 0; j < 8; ++j) {
    Nat want;
    mpz_ui_pow_ui(want.get_mpz_t(), 2, j);
    CHECK(cert2.limit->dim(j) == want);
  }

  auto [pres0, cert0] = presentation_from_supernatural(Supernatural::from_exponents({}));
  for (std::size_t j = 0; j < 5; ++j) CHECK(cert0.limit->dim(j) == 1);

  auto [pres6, cert6] = presentation_from_supernatural(
      Supernatural::from_exponents({{2, 1}, {3, 1}}));
  CHECK(cert6.limit->dim(0) == 1);
  CHECK(cert6.limit->dim(1) == 6);
  CHECK(cert6.limit->dim(4) == 6);
}

TEST_CASE("supernatural_from_certificate valuation streams") {
  auto [pres, cert] = presentation_from_supernatural(two_inf());
  auto v2 = supernatural_from_certificate(cert, 2, 6);
  CHECK(v2 == std::vector<unsigned long>{0, 1, 2, 3, 4, 5});
  auto v3 = supernatural_from_certificate(cert, 3, 6);
  CHECK(v3 == std::vector<unsigned long>{0, 0, 0, 0, 0, 0});

  // factorial dims: v_5(10!) = 2 at stage index 9 (dims (j+1)!)
  auto fac = parse_certificate_dims("dims factorial");
  auto limit = std::make_shared<DirectLimit>(fac);
  UhfCertificate fcert;
  fcert.limit = limit;
  auto v5 = supernatural_from_certificate(fcert, 5, 11);
  CHECK(v5[9] == 2);
  CHECK(v5[9] == legendre(10, 5));
  for (std::size_t j = 0; j + 1 < v5.size(); ++j) CHECK(v5[j] <= v5[j + 1]);
}

TEST_CASE("supernatural round trip on bounded supports") {
  std::mt19937 rng(20240607);
  std::vector<unsigned long> primes{2, 3, 5, 7, 11, 13};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::pair<unsigned long, std::optional<unsigned long>>> exps;
    std::vector<unsigned long> want(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) {
      unsigned long e = rng() % 9;  // exponents <= 8
      want[i] = e;
      if (e > 0) exps.emplace_back(primes[i], e);
    }
    auto [pres, cert] = presentation_from_supernatural(Supernatural::from_exponents(exps));
    for (std::size_t i = 0; i < primes.size(); ++i) {
      auto stream = supernatural_from_certificate(cert, primes[i], 10);
      CHECK(stream.back() == want[i]);
    }
  }
}

TEST_CASE("limit_norm on stage points") {
  auto [pres, cert] = presentation_from_supernatural(two_inf());
  // unit of any stage
  StarPoly unit1 = cert.embed_point(3, 1, ExactMatrix::identity(8));
  Ival n1 = limit_norm(cert, unit1, 10);
  CHECK(n1.contains(Rat(1)));

  // psi_1(E12) + psi_1(E21) has norm 1
  StarPoly sym = cert.embed_point(1, 1, ExactMatrix::unit(2, 1, 2) + ExactMatrix::unit(2, 2, 1));
  CHECK(limit_norm(cert, sym, 10).contains(Rat(1)));

  // psi_1(E11) - psi_2(E11) has norm 1
  StarPoly d = cert.embed_point(1, 1, ExactMatrix::unit(2, 1, 1)) -
               cert.embed_point(2, 1, ExactMatrix::unit(4, 1, 1));
  CHECK(limit_norm(cert, d, 10).contains(Rat(1)));
}

TEST_CASE("trace obeys the widened-disk contract") {
  auto [pres, cert] = presentation_from_supernatural(two_inf());
  TraceResult one = trace(cert, *pres->unit, 16);
  CHECK(one.exact == GQ::integer(1));
  CHECK(one.interval.contains(Rat(1)));

  for (std::size_t j = 1; j <= 10; ++j) {
    std::size_t nj = std::size_t(1) << j;
    StarPoly p = cert.embed_point(j, 1, ExactMatrix::unit(nj, 1, 1));
    TraceResult t = trace(cert, p, 16);
    CHECK(t.exact == GQ(Rat(1, static_cast<long>(nj))));
    CHECK(t.interval.contains(Rat(1, static_cast<long>(nj))));
    CHECK(t.interval.width() <= 3 * pow2(-16));
  }

  StarPoly offdiag = cert.embed_point(1, 1, ExactMatrix::unit(2, 1, 2));
  CHECK(trace(cert, offdiag, 12).exact == GQ());
}

TEST_CASE("trace is additive and unital on stage points") {
  auto [pres, cert] = presentation_from_supernatural(two_inf());
  std::mt19937 rng(5);
  for (int i = 0; i < 10; ++i) {
    ExactMatrix x(4, 4), y(4, 4);
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) {
        Rat xv(static_cast<long>(rng() % 7) - 3, 2), yv(static_cast<long>(rng() % 7) - 3, 3);
        xv.canonicalize();
        yv.canonicalize();
        x.at(r, c) = GQ(xv);
        y.at(r, c) = GQ(yv);
      }
    StarPoly px = cert.embed_point(2, 1, x), py = cert.embed_point(2, 1, y);
    CHECK(trace(cert, px + py, 10).exact == trace(cert, px, 10).exact + trace(cert, py, 10).exact);
  }
}

TEST_CASE("mvn_decide_uhf by exact traces") {
  auto [pres, cert] = presentation_from_supernatural(two_inf());
  StarPoly p2 = cert.embed_point(2, 1, ExactMatrix::unit(4, 1, 1) + ExactMatrix::unit(4, 2, 2));
  StarPoly p1 = cert.embed_point(1, 1, ExactMatrix::unit(2, 1, 1));
  CHECK(mvn_decide_uhf(cert, 1, p2, 1, p1) == MvnUhf::Equivalent);
  CHECK(mvn_decide_uhf(cert, 1, *pres->unit, 1, p1) == MvnUhf::Inequivalent);
  CHECK(mvn_decide_uhf(cert, 1, p1, 1, p1) == MvnUhf::Equivalent);
  // non-projection input
  StarPoly half = pres->unit->scaled(GQ(Rat(1, 2)));
  CHECK_THROWS_AS(mvn_decide_uhf(cert, 1, half, 1, p1), ekt::Error);
}

TEST_CASE("mvn_decide_uhf is invariant under canonical re-staging") {
  auto [pres, cert] = presentation_from_supernatural(two_inf());
  ExactMatrix p = ExactMatrix::unit(2, 1, 1);
  auto e24 = ekt::fd::canonical_embedding(2, 4);
  StarPoly low = cert.embed_point(1, 1, p);
  StarPoly high = cert.embed_point(2, 1, e24.apply(p));
  CHECK(mvn_decide_uhf(cert, 1, low, 1, high) == MvnUhf::Equivalent);
}

TEST_CASE("find_unit on certificate-backed and matrix instances") {
  auto [pres, cert] = presentation_from_supernatural(two_inf());
  PointHandle support = PointHandle::exact_point(pres, *pres->unit);
  FindUnitResult r = find_unit(pres, 1, support, 60000);
  REQUIRE(r.unit);
  Ival d = pres->norm(r.unit->approx(6) - *pres->unit, 10);
  CHECK(d.hi <= Rat(1, 8));

  PresPtr c = scalar_presentation();
  PointHandle sc = PointHandle::exact_point(c, *c->unit);
  FindUnitResult rc = find_unit(c, 1, sc, 60000);
  REQUIRE(rc.unit);
  GQ v = eval_scalar_point(rc.unit->approx(8), 1).at(0, 0);
  GQ diff = v - GQ::integer(1);
  CHECK(diff.norm_sq() <= pow2(-4));

  // standard M_2(C): the handle converges to I_2
  PresPtr m2 = fd_presentation(2);
  PointHandle sm = PointHandle::exact_point(m2, *m2->unit);
  FindUnitResult rm = find_unit(m2, 1, sm, 120000);
  REQUIRE(rm.unit);
  Ival dm = m2->norm(rm.unit->approx(6) - *m2->unit, 10);
  CHECK(dm.hi <= Rat(1, 8));
}

TEST_CASE("counter machines and the hard supernatural") {
  CounterMachine none = machine_reject_all();
  CounterMachine all = machine_accept_all();
  CounterMachine even = machine_accept_even();
  CHECK_FALSE(none.accepts_within(3, 100));
  CHECK(all.accepts_within(7, 2));
  CHECK(even.accepts_within(4, 100));
  CHECK_FALSE(even.accepts_within(5, 100));

  Supernatural eps = hard_supernatural({none, all, even});
  // stage monotonicity over many steps
  for (std::size_t j = 1; j < 60; ++j) (void)eps.stage(j);

  // machine 0 (never accepts): epsilon(p_0) stream constant 0
  for (std::size_t j = 0; j < 30; ++j) {
    unsigned long h2 = 0;
    for (auto& [p, e] : eps.stage(j))
      if (p == 2) h2 = e;
    CHECK(h2 == 0);
  }
  // machine 1 (accepts everything): h_s(p_1) = s + 1
  {
    auto st = eps.stage(20);
    unsigned long h3 = 0;
    for (auto& [p, e] : st)
      if (p == 3) h3 = e;
    CHECK(h3 == 21);
  }
  // machine 2 (evens): h_s(p_2) counts even inputs <= s accepted within s steps
  {
    auto st = eps.stage(40);
    unsigned long h5 = 0;
    for (auto& [p, e] : st)
      if (p == 5) h5 = e;
    CHECK(h5 > 0);
    CHECK(h5 <= 21);
  }
  // feeds the presentation builder
  auto [pres, cert] = presentation_from_supernatural(eps);
  CHECK(cert.limit->dim(2) > 0);
}

TEST_CASE("qepsilon membership and arithmetic") {
  QEpsilon q2(two_inf());
  std::size_t stage = 0;
  CHECK(q2.member(Rat(3, 8), 10, &stage) == ekt::words::Tri::Yes);
  CHECK(stage == 3);
  CHECK(q2.member(Rat(1, 3), 200) == ekt::words::Tri::Unknown);
  CHECK(q2.member(Rat(0), 1) == ekt::words::Tri::Yes);
  CHECK(q2.member(Rat(1), 1) == ekt::words::Tri::Yes);

  QEpsilonElement a{Rat(3, 8), 3}, b{Rat(1, 4), 2};
  CHECK(QEpsilon::add(a, b).value == Rat(5, 8));
  CHECK(QEpsilon::negate(a).value == Rat(-3, 8));
  CHECK(QEpsilon::compare(a, b) == 1);
}

TEST_CASE("supernatural text format") {
  Supernatural s = parse_supernatural("2 inf\n3 2\n");
  CHECK(s.stage_dim(4) == Nat(16 * 9));
  Supernatural m = parse_supernatural("machine 0 accept\n");
  CHECK(m.stage_dim(3) == Nat(16));  // h_3(2) = #W_{0,3} = 4
  CHECK_THROWS_AS(parse_supernatural("2\n"), ekt::ParseError);

  auto pw = parse_certificate_dims("dims powers 2");
  CHECK(pw(5) == Nat(32));
  auto ex = parse_certificate_dims("dims explicit 1 2 6 6");
  CHECK(ex(2) == Nat(6));
  CHECK(ex(9) == Nat(6));
  CHECK_THROWS_AS(parse_certificate_dims("dims wat"), ekt::ParseError);
}

TEST_CASE("extract_certificate on the 2^infty presentation") {
  auto [pres, cert] = presentation_from_supernatural(two_inf());
  ExtractOptions opts;
  opts.stages = 5;
  opts.per_stage_fuel = 3000;
  ExtractResult r = extract_certificate(pres, opts);
  CHECK(r.complete);
  REQUIRE(r.stages.size() == 6);
  for (std::size_t t = 1; t < r.stages.size(); ++t) {
    CHECK(r.stages[t].inv2_exact);
    CHECK(r.stages[t].dim % r.stages[t - 1].dim == 0);
    // dims are powers of two
    std::size_t d = r.stages[t].dim;
    while (d % 2 == 0) d /= 2;
    CHECK(d == 1);
    if (t >= 2) CHECK(r.stages[t].inv1_residual < pow2(-static_cast<long>(t) + 1));
  }
  REQUIRE(r.certificate);
  // the extracted certificate embeds units consistently with the limit
  StarPoly u = r.certificate->embed_point(1, 1, ExactMatrix::identity(r.stages[1].dim));
  CHECK(pres->norm(u - *pres->unit, 10).hi <= pow2(-9));
}

TEST_CASE("extract_certificate on C and on M_2(C)") {
  PresPtr c = scalar_presentation();
  ExtractOptions opts;
  opts.stages = 3;
  opts.per_stage_fuel = 1500;
  ExtractResult rc = extract_certificate(c, opts);
  CHECK(rc.complete);
  for (const auto& st : rc.stages) CHECK(st.dim == 1);

  PresPtr m2 = fd_presentation(2);
  ExtractOptions o2;
  o2.stages = 2;
  o2.per_stage_fuel = 3000;
  o2.tracked_points = {scalar_matrix_point(2, ExactMatrix::unit(2, 1, 1))};
  ExtractResult rm2 = extract_certificate(m2, o2);
  CHECK(rm2.complete);
  REQUIRE(rm2.stages.size() >= 2);
  CHECK(rm2.stages[1].dim == 2);
}
