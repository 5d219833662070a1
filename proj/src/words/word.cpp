#include "ekt/words/word.hpp"

#include <sstream>

#include "ekt/error.hpp"

namespace ekt::words {

SgWord::SgWord(std::vector<Nat> g) : gens(std::move(g)) {
  if (gens.empty()) throw Error("SgWord: empty word");
}

SgWord SgWord::concat(const SgWord& o) const {
  SgWord r = *this;
  r.gens.insert(r.gens.end(), o.gens.begin(), o.gens.end());
  return r;
}

std::string SgWord::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) os << "*";
    os << "x" << gens[i].get_str();
  }
  return os.str();
}

std::string GpWord::str() const {
  if (letters.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) os << "*";
    os << "x" << letters[i].gen.get_str();
    if (letters[i].inv) os << "^-1";
  }
  return os.str();
}

GpWord reduce(const GpWord& w) {
  GpWord r;
  for (const Letter& l : w.letters) {
    if (!r.letters.empty() && r.letters.back() == l.inverse())
      r.letters.pop_back();
    else
      r.letters.push_back(l);
  }
  return r;
}

GpWord gp_concat(const GpWord& a, const GpWord& b) {
  GpWord r = a;
  r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
  return reduce(r);
}

GpWord gp_inverse(const GpWord& a) {
  GpWord r;
  for (auto it = a.letters.rbegin(); it != a.letters.rend(); ++it)
    r.letters.push_back(it->inverse());
  return r;
}

GpWord gp_pow(const GpWord& a, long e) {
  GpWord base = e >= 0 ? a : gp_inverse(a);
  long n = e >= 0 ? e : -e;
  GpWord r;
  for (long i = 0; i < n; ++i) r = gp_concat(r, base);
  return r;
}

GpWord as_group_word(const SgWord& w) {
  GpWord r;
  for (const Nat& g : w.gens) r.letters.push_back({g, false});
  return r;
}

SgWord as_semigroup_word(const GpWord& w) {
  if (w.empty()) throw Error("as_semigroup_word: empty word");
  std::vector<Nat> gens;
  for (const Letter& l : w.letters) {
    if (l.inv) throw Error("as_semigroup_word: word contains an inverse");
    gens.push_back(l.gen);
  }
  return SgWord(std::move(gens));
}

Nat word_index(const SgWord& w) {
  if (w.gens.empty()) throw Error("word_index: empty semigroup word");
  Nat grade = static_cast<long>(w.gens.size()) - 1;
  for (const Nat& g : w.gens) grade += g;
  if (!grade.fits_ulong_p()) throw Error("word_index: grade too large");
  unsigned long g = grade.get_ui();
  // Binary composition code: c_i zeros then a separating one.
  Nat rank = 0;
  unsigned long pos = g;  // bits written so far counted from the top
  for (std::size_t i = 0; i < w.gens.size(); ++i) {
    unsigned long zeros = w.gens[i].get_ui();
    pos -= zeros;
    if (i + 1 < w.gens.size()) {
      --pos;
      Nat bit = 1;
      mpz_mul_2exp(bit.get_mpz_t(), bit.get_mpz_t(), pos);
      rank += bit;
    }
  }
  Nat base = 1;
  mpz_mul_2exp(base.get_mpz_t(), base.get_mpz_t(), g);
  return base - 1 + rank;
}

SgWord index_word_sg(const Nat& n) {
  Nat m = n + 1;
  unsigned long g = mpz_sizeinbase(m.get_mpz_t(), 2) - 1;  // floor(log2(m))
  Nat base = 1;
  mpz_mul_2exp(base.get_mpz_t(), base.get_mpz_t(), g);
  Nat rank = m - base;
  std::vector<Nat> gens;
  Nat cur = 0;
  for (unsigned long i = 0; i < g; ++i) {
    unsigned long pos = g - 1 - i;
    if (mpz_tstbit(rank.get_mpz_t(), pos) != 0) {
      gens.push_back(cur);
      cur = 0;
    } else {
      cur += 1;
    }
  }
  gens.push_back(cur);
  return SgWord(std::move(gens));
}

namespace {

Nat letter_raw(const Letter& l) { return 2 * l.gen + (l.inv ? 1 : 0); }

Letter letter_from_raw(const Nat& raw) {
  return Letter{raw / 2, mpz_odd_p(raw.get_mpz_t()) != 0};
}

}  // namespace

Nat word_index(const GpWord& w) {
  if (reduce(w) != w) throw Error("word_index: group word not reduced");
  if (w.empty()) return 0;
  std::vector<Nat> stored;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    Nat raw = letter_raw(w.letters[i]);
    if (i == 0) {
      stored.push_back(raw);
    } else {
      Nat forbidden = letter_raw(w.letters[i - 1].inverse());
      stored.push_back(raw > forbidden ? raw - 1 : raw);
    }
  }
  return codec::list_encode(stored);
}

GpWord index_word_gp(const Nat& n) {
  GpWord w;
  if (n == 0) return w;
  std::vector<Nat> stored = codec::list_decode(n);
  for (std::size_t i = 0; i < stored.size(); ++i) {
    Nat raw = stored[i];
    if (i > 0) {
      Nat forbidden = letter_raw(w.letters.back().inverse());
      if (raw >= forbidden) raw += 1;
    }
    w.letters.push_back(letter_from_raw(raw));
  }
  return w;
}

}  // namespace ekt::words
