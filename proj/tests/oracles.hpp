// Test-side oracles, independent of the library implementation paths they
// check: cofactor-expansion characteristic polynomial, a self-contained
// Sturm root counter, and bisection-based square roots.
#pragma once

#include <vector>

#include "ekt/exact/interval.hpp"
#include "ekt/exact/matrix.hpp"

namespace oracle {

using ekt::exact::ExactMatrix;
using ekt::exact::GQ;
using ekt::exact::Ival;
using ekt::exact::Rat;

// Polynomials over Q(i), coefficient order c[0] + c[1] x + ...
using PolyC = std::vector<GQ>;

inline PolyC pc_trim(PolyC p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

inline PolyC pc_add(const PolyC& a, const PolyC& b) {
  PolyC r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return pc_trim(r);
}

inline PolyC pc_mul(const PolyC& a, const PolyC& b) {
  if (a.empty() || b.empty()) return {};
  PolyC r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return pc_trim(r);
}

inline PolyC pc_neg(const PolyC& a) {
  PolyC r = a;
  for (auto& c : r) c = -c;
  return r;
}

// det(x I - H) by recursive cofactor expansion along the first column.
inline PolyC charpoly_cofactor(const std::vector<std::vector<PolyC>>& m) {
  std::size_t n = m.size();
  if (n == 1) return m[0][0];
  PolyC det;
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<std::vector<PolyC>> minor;
    for (std::size_t rr = 0; rr < n; ++rr) {
      if (rr == r) continue;
      std::vector<PolyC> row;
      for (std::size_t cc = 1; cc < n; ++cc) row.push_back(m[rr][cc]);
      minor.push_back(std::move(row));
    }
    PolyC term = pc_mul(m[r][0], charpoly_cofactor(minor));
    if (r % 2 == 1) term = pc_neg(term);
    det = pc_add(det, term);
  }
  return det;
}

inline std::vector<Rat> charpoly_oracle(const ExactMatrix& h) {
  std::size_t n = h.rows();
  std::vector<std::vector<PolyC>> m(n, std::vector<PolyC>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      PolyC p{-h.at(r, c)};
      if (r == c) p.push_back(GQ::integer(1));
      m[r][c] = pc_trim(p);
    }
  PolyC det = charpoly_cofactor(m);
  std::vector<Rat> out;
  for (const GQ& c : det) {
    if (c.im != 0) throw std::runtime_error("oracle charpoly: non-real coefficient");
    out.push_back(c.re);
  }
  return out;
}

using PolyQ = std::vector<Rat>;

inline PolyQ pq_trim(PolyQ p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

inline Rat pq_eval(const PolyQ& p, const Rat& x) {
  Rat v(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
  return v;
}

inline PolyQ pq_deriv(const PolyQ& p) {
  PolyQ d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  return pq_trim(d);
}

inline PolyQ pq_rem(PolyQ a, const PolyQ& b) {
  a = pq_trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rat f = a.back() / b.back();
    std::size_t s = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[s + i] -= f * b[i];
    a = pq_trim(a);
  }
  return a;
}

inline PolyQ pq_gcd(PolyQ a, PolyQ b) {
  a = pq_trim(a);
  b = pq_trim(b);
  while (!b.empty()) {
    PolyQ r = pq_rem(a, b);
    a = b;
    b = r;
  }
  return a;
}

inline PolyQ pq_div(const PolyQ& a_in, const PolyQ& b) {
  PolyQ a = pq_trim(a_in), q(a.size(), Rat(0));
  while (a.size() >= b.size() && !a.empty()) {
    Rat f = a.back() / b.back();
    std::size_t s = a.size() - b.size();
    q[s] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[s + i] -= f * b[i];
    a = pq_trim(a);
  }
  return pq_trim(q);
}

inline int pq_roots_in(const PolyQ& squarefree, const Rat& a, const Rat& b) {
  std::vector<PolyQ> chain{squarefree, pq_deriv(squarefree)};
  while (!chain.back().empty()) {
    PolyQ r = pq_rem(chain[chain.size() - 2], chain.back());
    for (auto& c : r) c = -c;
    if (r.empty()) break;
    chain.push_back(r);
  }
  auto variations = [&chain](const Rat& x) {
    int v = 0, last = 0;
    for (const auto& p : chain) {
      Rat y = pq_eval(p, x);
      int s = y > 0 ? 1 : (y < 0 ? -1 : 0);
      if (s == 0) continue;
      if (last != 0 && s != last) ++v;
      last = s;
    }
    return v;
  };
  return variations(a) - variations(b);
}

// Interval of width <= 2^-k containing ||M|| (spectral norm).
inline Ival opnorm_oracle(const ExactMatrix& m, long k) {
  ExactMatrix h = m.adjoint() * m;
  PolyQ p = pq_trim(charpoly_oracle(h));
  std::size_t z = 0;
  while (z < p.size() && p[z] == 0) ++z;
  PolyQ q(p.begin() + static_cast<long>(z), p.end());
  if (q.size() <= 1) return Ival::point(Rat(0));
  PolyQ g = pq_gcd(q, pq_deriv(q));
  PolyQ sf = g.size() <= 1 ? q : pq_div(q, g);
  // Root bound: 1 + max |c_i / c_deg|.
  Rat bound(1);
  for (std::size_t i = 0; i + 1 < sf.size(); ++i) {
    Rat v = sf[i] / sf.back();
    if (v < 0) v = -v;
    if (v + 1 > bound) bound = v + 1;
  }
  Rat lo(0), hi = bound;
  const Rat target = ekt::exact::pow2(-k);
  while (true) {
    Rat slo = lo == 0 ? Rat(0) : ekt::exact::sqrt_lower(lo, k + 4);
    Rat shi = ekt::exact::sqrt_upper(hi, k + 4);
    if (shi - slo <= target) return Ival(slo, shi);
    Rat mid = (lo + hi) / 2;
    if (pq_roots_in(sf, mid, hi) >= 1)
      lo = mid;
    else
      hi = mid;
  }
}

}  // namespace oracle
