#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "ekt/words/word.hpp"

namespace ekt::words {

enum class AlgKind { semigroup, group };
enum class OracleMode { computable, ce };

inline OracleMode combine_modes(OracleMode a, OracleMode b) {
  return (a == OracleMode::computable && b == OracleMode::computable) ? OracleMode::computable
                                                                      : OracleMode::ce;
}

// Fuel-bounded (semi)decision procedure for the kernel relation.  In
// computable mode the answer is Yes/No for sufficient fuel and stable; in ce
// mode Yes answers are sound and every true pair is eventually confirmed.
struct KernelOracle {
  OracleMode mode = OracleMode::ce;
  std::function<Tri(const GpWord&, const GpWord&, Fuel)> decide;
};

// Presentation of a (semi)group: a labeling of D_omega / F_omega words by
// element descriptors plus a kernel oracle.  Semigroup presentations receive
// nonempty all-positive words.
struct AlgPresentation {
  AlgKind kind = AlgKind::group;
  std::function<std::string(const GpWord&)> label_map;
  KernelOracle kernel;

  Tri in_kernel(const GpWord& a, const GpWord& b, Fuel fuel) const {
    return kernel.decide(a, b, fuel);
  }
};

// A computably enumerable set of words: a membership semidecision plus a
// fair slot-indexed enumeration (every member appears at some slot; empty
// slots are allowed).
struct CeWordSet {
  std::function<Tri(const GpWord&, Fuel)> member;
  std::function<std::optional<GpWord>(std::uint64_t slot)> enumerate;
};

// Kernel of a computable homomorphism phi: G0 -> G1 presented by the word
// transformation f (nu1 . f = phi . nu0), as a c.e. set of G0-labels.
CeWordSet kernel_of_map(std::function<GpWord(const GpWord&)> f, AlgPresentation g1,
                        GpWord identity_label);

// C.e. presentation of a subgroup H (given as a c.e. set of G-labels closed
// under the group operations) with a computable inclusion map.
struct SubgroupPresentation {
  AlgPresentation pres;
  // Word transformation realizing the inclusion H# -> G#.
  std::function<GpWord(const GpWord&)> include;
  // The G-label assigned to generator x_n.
  std::function<GpWord(const Nat&)> generator_label;
};
SubgroupPresentation subgroup_presentation(AlgPresentation g, CeWordSet h, Fuel stage_fuel);

// Presentation of S0 x S1 by the interleaving of word tuples; projections
// and the pairing map are computable.
struct ProductPresentation {
  AlgPresentation pres;
  // Decode a product word into its component words.
  std::function<GpWord(const GpWord&)> proj0, proj1;
  // The single-letter product word labeling the pair (w0, w1).
  std::function<GpWord(const GpWord&, const GpWord&)> pair_label;
};
ProductPresentation product_presentation(AlgPresentation s0, AlgPresentation s1);

}  // namespace ekt::words
