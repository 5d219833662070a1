#include "ekt/cstar/starpoly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ekt/error.hpp"

namespace ekt::cstar {

StarPoly StarPoly::generator(const Nat& g) {
  StarPoly p;
  p.terms.push_back(Term{GQ::integer(1), {MonoLetter{g, false}}});
  return p;
}

StarPoly StarPoly::adjoint() const {
  StarPoly r;
  for (const Term& t : terms) {
    Term s;
    s.coeff = t.coeff.conj();
    for (auto it = t.mono.rbegin(); it != t.mono.rend(); ++it)
      s.mono.push_back(MonoLetter{it->gen, !it->star});
    r.terms.push_back(std::move(s));
  }
  return r;
}

StarPoly StarPoly::scaled(const GQ& c) const {
  if (c.is_zero()) return {};
  StarPoly r;
  for (const Term& t : terms) r.terms.push_back(Term{t.coeff * c, t.mono});
  return r;
}

StarPoly StarPoly::normalized() const {
  std::map<std::vector<MonoLetter>, GQ> acc;
  for (const Term& t : terms) acc[t.mono] += t.coeff;
  StarPoly r;
  for (auto& [mono, coeff] : acc)
    if (!coeff.is_zero()) r.terms.push_back(Term{coeff, mono});
  return r;
}

std::string StarPoly::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) os << " + ";
    os << "(" << terms[i].coeff.str() << ")";
    for (const MonoLetter& l : terms[i].mono) {
      os << "*a" << l.gen.get_str();
      if (l.star) os << "'";
    }
  }
  return os.str();
}

StarPoly operator+(const StarPoly& a, const StarPoly& b) {
  StarPoly r = a;
  r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
  return r.normalized();
}

StarPoly operator-(const StarPoly& a, const StarPoly& b) {
  return a + b.scaled(GQ::integer(-1));
}

StarPoly operator*(const StarPoly& a, const StarPoly& b) {
  StarPoly r;
  for (const Term& s : a.terms)
    for (const Term& t : b.terms) {
      Term u;
      u.coeff = s.coeff * t.coeff;
      u.mono = s.mono;
      u.mono.insert(u.mono.end(), t.mono.begin(), t.mono.end());
      r.terms.push_back(std::move(u));
    }
  return r.normalized();
}

namespace {

Nat letter_encode(const MonoLetter& l) { return 2 * l.gen + (l.star ? 1 : 0); }
MonoLetter letter_decode(const Nat& n) {
  return MonoLetter{n / 2, mpz_odd_p(n.get_mpz_t()) != 0};
}

Nat term_encode(const Term& t) {
  std::vector<Nat> letters;
  for (const MonoLetter& l : t.mono) letters.push_back(letter_encode(l));
  Nat mono_code = codec::list_encode(letters) - 1;  // nonempty lists code from 1
  return codec::pair(codec::gq_nonzero_encode(t.coeff), mono_code);
}

Term term_decode(const Nat& n) {
  auto [c, m] = codec::unpair(n);
  Term t;
  t.coeff = codec::gq_nonzero_decode(c);
  for (const Nat& raw : codec::list_decode(m + 1)) t.mono.push_back(letter_decode(raw));
  return t;
}

}  // namespace

Nat starpoly_encode(const StarPoly& p) {
  std::vector<Nat> codes;
  for (const Term& t : p.terms) codes.push_back(term_encode(t));
  return codec::list_encode(codes);
}

StarPoly starpoly_decode(const Nat& n) {
  StarPoly p;
  for (const Nat& c : codec::list_decode(n)) p.terms.push_back(term_decode(c));
  return p;
}

StarPoly amplify_inject(const StarPoly& p, std::size_t n, std::size_t r, std::size_t c) {
  if (r < 1 || r > n || c < 1 || c > n) throw DimensionError("amplify_inject: index out of range");
  StarPoly out;
  for (const Term& t : p.terms) {
    Term u;
    u.coeff = t.coeff;
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      std::size_t row = r, col = i + 1 == t.mono.size() ? c : r;
      const MonoLetter& l = t.mono[i];
      Nat code = l.star ? codec::triple(l.gen, Nat(static_cast<long>(col - 1)),
                                        Nat(static_cast<long>(row - 1)))
                        : codec::triple(l.gen, Nat(static_cast<long>(row - 1)),
                                        Nat(static_cast<long>(col - 1)));
      u.mono.push_back(MonoLetter{code, l.star});
    }
    out.terms.push_back(std::move(u));
  }
  return out.normalized();
}

std::vector<StarPoly> amplified_grid(const StarPoly& p, std::size_t n) {
  if (n == 1) return {p};
  std::vector<StarPoly> grid(n * n);
  for (const Term& t : p.terms) {
    // Each letter is v_g E_{r,c} (or its adjoint); the product collapses via
    // matrix-unit multiplication or vanishes.
    bool dead = false;
    std::size_t row = 0, col = 0;
    Term base;
    base.coeff = t.coeff;
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      Nat g, a, b;
      codec::untriple(t.mono[i].gen, g, a, b);
      std::size_t r = codec::fold_index(a, n), c = codec::fold_index(b, n);
      if (t.mono[i].star) std::swap(r, c);
      if (i == 0) {
        row = r;
      } else if (col != r) {
        dead = true;
        break;
      }
      col = c;
      base.mono.push_back(MonoLetter{g, t.mono[i].star});
    }
    if (dead) continue;
    StarPoly& cell = grid[(row - 1) * n + (col - 1)];
    cell.terms.push_back(std::move(base));
  }
  for (StarPoly& cell : grid) cell = cell.normalized();
  return grid;
}

}  // namespace ekt::cstar
