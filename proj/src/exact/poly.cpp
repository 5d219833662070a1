#include "ekt/exact/poly.hpp"

#include "ekt/error.hpp"

namespace ekt::exact {

Poly poly_normalize(Poly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

int poly_degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Rat poly_eval(const Poly& p, const Rat& x) {
  Rat v(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
  return v;
}

Poly poly_derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  return poly_normalize(std::move(d));
}

Poly poly_rem(const Poly& a_in, const Poly& b_in) {
  Poly a = poly_normalize(a_in);
  Poly b = poly_normalize(b_in);
  if (b.empty()) throw Error("poly_rem: division by zero polynomial");
  while (a.size() >= b.size() && !a.empty()) {
    Rat f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a = poly_normalize(std::move(a));
  }
  return a;
}

Poly poly_divexact_linear_power(const Poly& p, std::size_t m) {
  if (p.size() <= m) return {};
  Poly q(p.begin() + static_cast<long>(m), p.end());
  return poly_normalize(std::move(q));
}

Poly poly_gcd(Poly a, Poly b) {
  a = poly_normalize(std::move(a));
  b = poly_normalize(std::move(b));
  while (!b.empty()) {
    Poly r = poly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() != 1) {
    Rat lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

Poly poly_squarefree_part(const Poly& p_in) {
  Poly p = poly_normalize(p_in);
  if (poly_degree(p) <= 1) return p;
  Poly g = poly_gcd(p, poly_derivative(p));
  if (poly_degree(g) <= 0) return p;
  // exact division p / g
  Poly q;
  Poly rem = p;
  int dq = poly_degree(p) - poly_degree(g);
  q.assign(static_cast<std::size_t>(dq) + 1, Rat(0));
  while (poly_degree(rem) >= poly_degree(g) && !rem.empty()) {
    Rat f = rem.back() / g.back();
    std::size_t shift = rem.size() - g.size();
    q[shift] = f;
    for (std::size_t i = 0; i < g.size(); ++i) rem[shift + i] -= f * g[i];
    rem = poly_normalize(std::move(rem));
  }
  if (!rem.empty()) throw Error("poly_squarefree_part: inexact division");
  return poly_normalize(std::move(q));
}

std::vector<Poly> sturm_chain(const Poly& squarefree) {
  std::vector<Poly> chain;
  Poly p0 = poly_normalize(squarefree);
  if (p0.empty()) return chain;
  chain.push_back(p0);
  Poly p1 = poly_derivative(p0);
  if (p1.empty()) return chain;
  chain.push_back(p1);
  while (true) {
    Poly r = poly_rem(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  return chain;
}

namespace {
int sgn(const Rat& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }
}  // namespace

int sturm_variations(const std::vector<Poly>& chain, const Rat& x) {
  int variations = 0, last = 0;
  for (const Poly& p : chain) {
    int s = sgn(poly_eval(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}

int sturm_count_roots(const std::vector<Poly>& chain, const Rat& a, const Rat& b) {
  if (chain.empty()) return 0;
  return sturm_variations(chain, a) - sturm_variations(chain, b);
}

}  // namespace ekt::exact
