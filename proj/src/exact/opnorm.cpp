#include "ekt/exact/opnorm.hpp"

#include "ekt/error.hpp"
#include "ekt/exact/poly.hpp"

namespace ekt::exact {

namespace {

Ival sqrt_ival(const Rat& lo_sq, const Rat& hi_sq, long g) {
  Rat l0, l1, h0, h1;
  sqrt_bounds(lo_sq, g, l0, l1);
  sqrt_bounds(hi_sq, g, h0, h1);
  return Ival(l0, h1);
}

// Largest-eigenvalue interval of the stripped characteristic polynomial q
// (roots = nonzero eigenvalues of a PSD matrix), refined until the square
// root interval at granularity 2^-(k+3) has width <= 2^-k.
Ival sqrt_of_largest_root(const Poly& q, const Rat& bound, long k) {
  Poly sf = poly_squarefree_part(q);
  std::vector<Poly> chain = sturm_chain(sf);
  Rat lo(0), hi(bound);
  const Rat target = pow2(-k);
  while (true) {
    Rat slo = lo == 0 ? Rat(0) : sqrt_lower(lo, k + 3);
    Rat shi = sqrt_upper(hi, k + 3);
    if (shi - slo <= target) return Ival(slo, shi);
    Rat mid = (lo + hi) / 2;
    if (sturm_count_roots(chain, mid, hi) >= 1)
      lo = mid;
    else
      hi = mid;
  }
}

}  // namespace

Ival certified_opnorm(const ExactMatrix& m, long k) {
  if (k < 0) throw Error("certified_opnorm: k must be >= 0");
  if (m.rows() == 0 || m.cols() == 0) return Ival::point(Rat(0));

  // Zero rows and columns do not affect the norm.
  std::vector<std::size_t> rows, cols;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m.at(r, c).is_zero()) {
        rows.push_back(r);
        break;
      }
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (!m.at(r, c).is_zero()) {
        cols.push_back(c);
        break;
      }
  if (rows.empty() || cols.empty()) return Ival::point(Rat(0));
  ExactMatrix s = m.submatrix(rows, cols);

  if (s.rows() == 1 && s.cols() == 1) return sqrt_ival(s.at(0, 0).norm_sq(), s.at(0, 0).norm_sq(), k + 2);
  if (s.is_diagonal()) {
    Rat lam(0);
    for (std::size_t i = 0; i < s.rows(); ++i) {
      Rat v = s.at(i, i).norm_sq();
      if (v > lam) lam = v;
    }
    return sqrt_ival(lam, lam, k + 2);
  }

  ExactMatrix h = s.rows() <= s.cols() ? s * s.adjoint() : s.adjoint() * s;
  if (h.is_diagonal()) {
    Rat lam(0);
    for (std::size_t i = 0; i < h.rows(); ++i) {
      const GQ& v = h.at(i, i);
      if (v.re > lam) lam = v.re;
    }
    return sqrt_ival(lam, lam, k + 2);
  }
  Poly p = charpoly_real(h);
  std::size_t zeros = 0;
  while (zeros < p.size() && p[zeros] == 0) ++zeros;
  Poly q = poly_divexact_linear_power(p, zeros);
  if (poly_degree(q) <= 0) return Ival::point(Rat(0));

  // Row-sum bound on the spectral radius of the Hermitian matrix h.
  Rat bound(0);
  for (std::size_t r = 0; r < h.rows(); ++r) {
    Rat rs(0);
    for (std::size_t c = 0; c < h.cols(); ++c) {
      const GQ& x = h.at(r, c);
      if (!x.is_zero()) rs += sqrt_upper(x.norm_sq(), 8);
    }
    if (rs > bound) bound = rs;
  }
  return sqrt_of_largest_root(q, bound, k);
}

Rat opnorm_upper_cheap(const ExactMatrix& m) { return sqrt_upper(m.frobenius_sq(), 16); }

Rat opnorm_lower_cheap(const ExactMatrix& m) { return sqrt_lower(m.max_entry_norm_sq(), 16); }

std::pair<Rat, Rat> norm_bounds(const ExactMatrix& m) {
  Rat max_norm(0), one_norm(0);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const GQ& x = m.at(r, c);
      if (x.is_zero()) continue;
      Rat sq = x.norm_sq(), root;
      if (is_perfect_square(sq, &root)) {
        if (root > max_norm) max_norm = root;
        one_norm += root;
      } else {
        Rat lo = sqrt_lower(sq, 40);
        if (lo > max_norm) max_norm = lo;
        one_norm += sqrt_upper(sq, 40);
      }
    }
  return {max_norm, one_norm};
}

GQ trace_exact(const ExactMatrix& m) {
  if (!m.square()) throw DimensionError("trace_exact: non-square matrix");
  GQ t = m.trace_sum();
  long n = static_cast<long>(m.rows());
  return GQ(t.re / n, t.im / n);
}

}  // namespace ekt::exact
