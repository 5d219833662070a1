#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ekt/error.hpp"
#include "ekt/exact/opnorm.hpp"
#include "ekt/exact/poly.hpp"
#include "oracles.hpp"

using namespace ekt::exact;

namespace {

ExactMatrix random_matrix(std::mt19937& rng, std::size_t n, long max_abs = 10) {
  std::uniform_int_distribution<long> num(-max_abs, max_abs);
  std::uniform_int_distribution<long> den(1, max_abs);
  ExactMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      Rat re(num(rng), den(rng));
      Rat im(num(rng), den(rng));
      re.canonicalize();
      im.canonicalize();
      m.at(r, c) = GQ(re, im);
    }
  return m;
}

ExactMatrix permutation_matrix(const std::vector<std::size_t>& perm) {
  ExactMatrix p(perm.size(), perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) p.at(perm[i], i) = GQ::integer(1);
  return p;
}

}  // namespace

TEST_CASE("certified_opnorm on the identity") {
  Ival iv = certified_opnorm(ExactMatrix::identity(2), 10);
  CHECK(iv.contains(Rat(1)));
  CHECK(iv.width() <= pow2(-10));
}

TEST_CASE("certified_opnorm on a matrix unit") {
  Ival iv = certified_opnorm(ExactMatrix::unit(2, 1, 2), 8);
  CHECK(iv.contains(Rat(1)));
  CHECK(iv.width() <= pow2(-8));
}

TEST_CASE("certified_opnorm of [[1,1],[0,1]] brackets the golden ratio") {
  ExactMatrix m(2, 2);
  m.at(0, 0) = m.at(0, 1) = m.at(1, 1) = GQ::integer(1);
  Ival iv = certified_opnorm(m, 20);
  CHECK(iv.width() <= pow2(-20));
  // Bisect x^2 - x - 1 in test code for golden-ratio bounds.
  Rat lo(1), hi(2);
  for (int i = 0; i < 40; ++i) {
    Rat mid = (lo + hi) / 2;
    if (mid * mid - mid - 1 < 0)
      lo = mid;
    else
      hi = mid;
  }
  // Both intervals contain the golden ratio, so they must intersect.
  CHECK(iv.lo <= hi);
  CHECK(lo <= iv.hi);
}

TEST_CASE("certified_opnorm matches the cofactor/Sturm oracle") {
  std::mt19937 rng(20240501);
  for (int trial = 0; trial < 25; ++trial) {
    ExactMatrix m = random_matrix(rng, 3);
    Ival got = certified_opnorm(m, 16);
    Ival want = oracle::opnorm_oracle(m, 24);
    CHECK(got.width() <= pow2(-16));
    CHECK(got.intersects(want));
  }
}

TEST_CASE("certified_opnorm intervals are nested across k (up to tolerance)") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    ExactMatrix m = random_matrix(rng, 3, 5);
    Ival coarse = certified_opnorm(m, 8);
    Ival fine = certified_opnorm(m, 12);
    CHECK(fine.lo >= coarse.lo - pow2(-12));
    CHECK(fine.hi <= coarse.hi + pow2(-12));
  }
}

TEST_CASE("block-diagonal duplication preserves the norm") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 5; ++trial) {
    ExactMatrix m = random_matrix(rng, 2, 6);
    Ival one = certified_opnorm(m, 12);
    Ival two = certified_opnorm(m.dir_sum(m), 12);
    CHECK(one.intersects(two));
  }
}

TEST_CASE("norm_bounds examples") {
  auto [mx0, one0] = norm_bounds(ExactMatrix::zero(2, 2));
  CHECK(mx0 == 0);
  CHECK(one0 == 0);

  ExactMatrix diag2 = ExactMatrix::identity(2);
  auto [mx1, one1] = norm_bounds(diag2);
  CHECK(mx1 == 1);
  CHECK(one1 == 2);

  ExactMatrix m(2, 2);
  m.at(0, 0) = GQ(Rat(0), Rat(3, 5));
  m.at(1, 1) = GQ(Rat(4, 5));
  auto [mx2, one2] = norm_bounds(m);
  CHECK(mx2 == Rat(4, 5));
  CHECK(one2 == Rat(7, 5));
}

TEST_CASE("norm_bounds sandwich the certified norm") {
  std::mt19937 rng(20240502);
  for (int trial = 0; trial < 30; ++trial) {
    ExactMatrix m = random_matrix(rng, 3);
    Ival nrm = certified_opnorm(m, 20);
    auto [mx, one] = norm_bounds(m);
    CHECK(mx <= nrm.hi);
    CHECK(nrm.lo <= one);
  }
}

TEST_CASE("trace_exact") {
  CHECK(trace_exact(ExactMatrix::identity(4)) == GQ::integer(1));
  CHECK(trace_exact(ExactMatrix::unit(2, 1, 1)) == GQ(Rat(1, 2)));
  ExactMatrix d = ExactMatrix::diag({GQ::integer(1), GQ::integer(1), GQ::integer(0)});
  CHECK(trace_exact(d) == GQ(Rat(2, 3)));
  CHECK_THROWS_AS(trace_exact(ExactMatrix::zero(2, 3)), ekt::DimensionError);
}

TEST_CASE("trace_exact is invariant under permutation conjugation") {
  std::mt19937 rng(5);
  ExactMatrix m = random_matrix(rng, 4, 6);
  ExactMatrix u = permutation_matrix({2, 0, 3, 1});
  CHECK(trace_exact(u * m * u.adjoint()) == trace_exact(m));
}

TEST_CASE("charpoly agrees with the cofactor oracle") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    ExactMatrix m = random_matrix(rng, 3, 4);
    ExactMatrix h = m.adjoint() * m;
    CHECK(charpoly_real(h) == oracle::charpoly_oracle(h));
  }
}

TEST_CASE("rank and column space") {
  ExactMatrix p = ExactMatrix::unit(3, 1, 1) + ExactMatrix::unit(3, 3, 3);
  CHECK(p.rank() == 2);
  CHECK(ExactMatrix::zero(3, 3).rank() == 0);
  CHECK(ExactMatrix::identity(5).rank() == 5);

  ExactMatrix m(2, 2);
  m.at(0, 0) = GQ::integer(1);
  m.at(0, 1) = GQ::integer(2);
  m.at(1, 0) = GQ::integer(2);
  m.at(1, 1) = GQ::integer(4);
  CHECK(m.rank() == 1);
}

TEST_CASE("sqrt bounds and perfect squares") {
  Rat root;
  CHECK(is_perfect_square(Rat(9, 4), &root));
  CHECK(root == Rat(3, 2));
  CHECK_FALSE(is_perfect_square(Rat(2)));
  Rat lo, hi;
  sqrt_bounds(Rat(2), 20, lo, hi);
  CHECK(lo * lo <= 2);
  CHECK(hi * hi >= 2);
  CHECK(hi - lo <= pow2(-20));
}
