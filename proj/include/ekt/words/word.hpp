#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ekt/codec.hpp"

namespace ekt::words {

using Nat = codec::Nat;
using Fuel = std::uint64_t;

// Three-valued answer of a fuel-bounded (semi)decision.
enum class Tri { Yes, No, Unknown };

// Word of the free semigroup D_omega: a nonempty sequence of generator
// indices.
struct SgWord {
  std::vector<Nat> gens;

  SgWord() = default;
  explicit SgWord(std::vector<Nat> g);
  static SgWord single(const Nat& g) { return SgWord({g}); }

  friend bool operator==(const SgWord& a, const SgWord& b) { return a.gens == b.gens; }
  friend bool operator<(const SgWord& a, const SgWord& b) { return a.gens < b.gens; }
  SgWord concat(const SgWord& o) const;
  std::string str() const;
};

struct Letter {
  Nat gen;
  bool inv = false;
  friend bool operator==(const Letter& a, const Letter& b) {
    return a.gen == b.gen && a.inv == b.inv;
  }
  friend bool operator<(const Letter& a, const Letter& b) {
    if (a.gen != b.gen) return a.gen < b.gen;
    return a.inv < b.inv;
  }
  Letter inverse() const { return {gen, !inv}; }
};

// Word of the free group F_omega, kept freely reduced.  The empty word is
// the identity.  Semigroup words embed as all-positive group words; several
// presentation-level APIs use GpWord uniformly for both kinds.
struct GpWord {
  std::vector<Letter> letters;

  bool empty() const { return letters.empty(); }
  friend bool operator==(const GpWord& a, const GpWord& b) { return a.letters == b.letters; }
  friend bool operator<(const GpWord& a, const GpWord& b) { return a.letters < b.letters; }
  std::string str() const;
};

// Free reduction; idempotent and length-nonincreasing.
GpWord reduce(const GpWord& w);
GpWord gp_concat(const GpWord& a, const GpWord& b);  // reduced product
GpWord gp_inverse(const GpWord& a);
GpWord gp_pow(const GpWord& a, long e);

GpWord as_group_word(const SgWord& w);
// Positive group word back to a semigroup word; throws on inverses/empty.
SgWord as_semigroup_word(const GpWord& w);

// Fixed bijections with N.
// Semigroup words: graded enumeration with grade g = (length-1) + sum of
// generator indices; the 2^g words of grade g are ranked by their binary
// composition code.
Nat word_index(const SgWord& w);
SgWord index_word_sg(const Nat& n);
// Group words: 0 is the empty word; otherwise the rooted list code of the
// letter sequence, with each letter coded relative to the previous one so
// that exactly the freely reduced words are enumerated.
Nat word_index(const GpWord& w);
GpWord index_word_gp(const Nat& n);

}  // namespace ekt::words
