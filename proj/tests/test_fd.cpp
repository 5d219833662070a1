#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ekt/error.hpp"
#include "ekt/fd/fd.hpp"

using namespace ekt::fd;
using namespace ekt::exact;

namespace {
ExactMatrix random_matrix(std::mt19937& rng, std::size_t n, long max_abs = 4) {
  std::uniform_int_distribution<long> num(-max_abs, max_abs);
  std::uniform_int_distribution<long> den(1, max_abs);
  ExactMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      Rat re(num(rng), den(rng)), im(num(rng), den(rng));
      re.canonicalize();
      im.canonicalize();
      m.at(r, c) = GQ(re, im);
    }
  return m;
}
}  // namespace

TEST_CASE("canonical embedding is unital and composes") {
  auto e13 = canonical_embedding(1, 3);
  CHECK(e13.apply(ExactMatrix::identity(1)) == ExactMatrix::identity(3));

  auto e24 = canonical_embedding(2, 4);
  ExactMatrix img = e24.apply(ExactMatrix::unit(2, 1, 2));
  CHECK(img == ExactMatrix::unit(4, 1, 2) + ExactMatrix::unit(4, 3, 4));

  auto e12 = canonical_embedding(1, 2);
  auto e26 = canonical_embedding(2, 6);
  auto e16 = canonical_embedding(1, 6);
  std::mt19937 rng(3);
  for (int i = 0; i < 20; ++i) {
    ExactMatrix x = random_matrix(rng, 1);
    CHECK(e26.apply(e12.apply(x)) == e16.apply(x));
  }
  CHECK_THROWS_AS(canonical_embedding(2, 5), ekt::DimensionError);
}

TEST_CASE("canonical embedding preserves norm and normalized trace") {
  auto e = canonical_embedding(2, 6);
  std::mt19937 rng(17);
  for (int i = 0; i < 5; ++i) {
    ExactMatrix x = random_matrix(rng, 2);
    CHECK(certified_opnorm(x, 10).intersects(certified_opnorm(e.apply(x), 10)));
    CHECK(trace_exact(x) == trace_exact(e.apply(x)));
  }
}

TEST_CASE("mvn_decide_fd by rank with exactly verified witnesses") {
  ExactProjection e11(ExactMatrix::unit(2, 1, 1));
  ExactProjection e22(ExactMatrix::unit(2, 2, 2));
  MvnFdResult r = mvn_decide_fd(e11, e22);
  CHECK(r.equivalent);
  REQUIRE(r.witness);
  CHECK(r.witness->verify(e11.matrix, e22.matrix));
  auto v = r.witness->as_matrix();
  REQUIRE(v);
  CHECK(*v * v->adjoint() == e11.matrix);
  CHECK(v->adjoint() * *v == e22.matrix);

  // 0 vs identity: inequivalent
  ExactProjection z(ExactMatrix::zero(2, 2));
  ExactProjection id2(ExactMatrix::identity(2));
  CHECK_FALSE(mvn_decide_fd(z, id2).equivalent);

  // p vs p
  MvnFdResult same = mvn_decide_fd(e11, e11);
  CHECK(same.equivalent);
  CHECK(same.witness->verify(e11.matrix, e11.matrix));
}

TEST_CASE("mvn witness for a non-coordinate projection") {
  // projection onto span{(1,1)}: Gram 2, needs the diagonal correction
  ExactMatrix p(2, 2);
  p.at(0, 0) = p.at(0, 1) = p.at(1, 0) = p.at(1, 1) = GQ(Rat(1, 2));
  ExactProjection pp(p), e11(ExactMatrix::unit(2, 1, 1));
  MvnFdResult r = mvn_decide_fd(pp, e11);
  CHECK(r.equivalent);
  CHECK(r.witness->verify(p, e11.matrix));
}

TEST_CASE("mvn equivalence matches rank_trace equality (exhaustive diagonals)") {
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<ExactProjection> projs;
    for (std::size_t bits = 0; bits < (1u << n); ++bits) {
      std::vector<GQ> d(n);
      for (std::size_t i = 0; i < n; ++i) d[i] = GQ::integer((bits >> i) & 1);
      projs.emplace_back(ExactMatrix::diag(d));
    }
    for (const auto& p : projs)
      for (const auto& q : projs) {
        bool eq = mvn_decide_fd(p, q).equivalent;
        CHECK(eq == (rank_trace(p).first == rank_trace(q).first));
      }
  }
}

TEST_CASE("rank_trace") {
  CHECK(rank_trace(ExactProjection(ExactMatrix::identity(3))) ==
        std::pair<std::size_t, Rat>(3, Rat(1)));
  CHECK(rank_trace(ExactProjection(ExactMatrix::unit(2, 1, 1))) ==
        std::pair<std::size_t, Rat>(1, Rat(1, 2)));
  ExactMatrix m = ExactMatrix::unit(4, 1, 1) + ExactMatrix::unit(4, 3, 3);
  CHECK(rank_trace(ExactProjection(m)) == std::pair<std::size_t, Rat>(2, Rat(1, 2)));
}

TEST_CASE("spectral rounding: exact fixed point") {
  ExactMatrix p = ExactMatrix::unit(2, 1, 1);
  RoundedProjection r = spectral_round_to_projection(p);
  REQUIRE(r.exact);
  CHECK(*r.exact == p);
}

TEST_CASE("spectral rounding: rational eigenvalues round exactly") {
  ExactMatrix m = ExactMatrix::diag({GQ(Rat(9, 10)), GQ(Rat(1, 10))});
  RoundedProjection r = spectral_round_to_projection(m);
  REQUIRE(r.exact);
  CHECK(*r.exact == ExactMatrix::diag({GQ::integer(1), GQ::integer(0)}));
  // within 2 * residual of the input
  Ival d = certified_opnorm(m - *r.exact, 10);
  CHECK(d.lo <= 2 * r.residual_ub);
}

TEST_CASE("spectral rounding: out-of-basin guard") {
  ExactMatrix m = ExactMatrix::diag({GQ(Rat(7, 10)), GQ(Rat(3, 10))});
  // residual ||m^2 - m|| = 0.21 >= ... within basin? 0.21 < 0.25, stays fine
  CHECK_NOTHROW(spectral_round_to_projection(m));
  ExactMatrix bad = ExactMatrix::diag({GQ(Rat(1, 2)), GQ(Rat(1, 2))});
  // residual 1/4 exactly: rejected
  CHECK_THROWS_AS(spectral_round_to_projection(bad), ekt::OutOfBasinError);
}

TEST_CASE("spectral rounding: irrational eigenvalues give a converging handle") {
  // Hermitian with eigenvalues (1 +- sqrt(1/2))/2 + 1/2-ish: build a small
  // perturbation of a projection with irrational spectrum.
  ExactMatrix m(2, 2);
  m.at(0, 0) = GQ(Rat(19, 20));
  m.at(0, 1) = GQ(Rat(1, 10));
  m.at(1, 0) = GQ(Rat(1, 10));
  m.at(1, 1) = GQ(Rat(1, 20));
  RoundedProjection r = spectral_round_to_projection(m);
  ExactMatrix x = r.approx(10);
  Ival res = certified_opnorm(x * x - x, 14);
  CHECK(res.hi <= pow2(-11));
  CHECK(x == x.adjoint());
  // close to the input
  Ival d = certified_opnorm(m - x, 10);
  CHECK(d.lo <= Rat(1, 2));
}
