#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ekt/esets/esets.hpp"
#include "ekt/uhf/uhf.hpp"
#include "ekt/words/presentation.hpp"

namespace ekt::kth {

using cstar::PointHandle;
using cstar::PresPtr;
using cstar::StarHom;
using cstar::StarPoly;
using exact::Rat;
using codec::Nat;
using words::AlgPresentation;
using words::Fuel;
using words::GpWord;
using words::SgWord;
using words::Tri;

// ---- projections of matrix amplifications ----

// Total computable family p_{n,k} of projections of M_n(A): slot k decodes
// to the k-th exact projection seed (zero projection on empty slots), or to
// a ball-search handle for instances without exact seeds.  Murray-von
// Neumann complete over slots for the backed instances.
struct ProjectionList {
  PresPtr a;
  std::function<PointHandle(std::size_t n, const Nat& slot)> handle;
  // exact rational point of the slot when available
  std::function<std::optional<StarPoly>(std::size_t n, const Nat& slot)> point;
  // exact Murray-von Neumann invariant (rank / trace value) when available
  std::function<std::optional<Rat>(std::size_t n, const Nat& slot)> invariant;
};
ProjectionList enumerate_projections(PresPtr a, Fuel per_point_fuel = 20000);

// ---- the Murray-von Neumann semigroup D(A) ----

struct DPresentation {
  PresPtr a;
  AlgPresentation sg;  // semigroup presentation over D_omega
  // support: w |-> (n_w, handle of phi_0(w) in M_{n_w}(A))
  std::function<std::size_t(const SgWord&)> level;
  std::function<PointHandle(const SgWord&)> support;
  std::function<std::optional<StarPoly>(const SgWord&)> support_point;  // exact when available
  // additive exact class invariant; null when the instance has none
  std::function<std::optional<Rat>(const SgWord&)> invariant;
  bool decidable = false;  // kernel decided by the invariant
};
DPresentation build_D(PresPtr a, Fuel kernel_fuel = 20000);

// Word transformation realizing D(psi) for a computable *-homomorphism.
// Returns the first confirmed label (Unknown -> nullopt per word).
struct DMap {
  std::function<std::optional<SgWord>(const SgWord&)> apply;
};
DMap D_of_map(const StarHom& psi, const DPresentation& d0, const DPresentation& d1,
              Fuel per_word_fuel = 20000);

// Computable isomorphism aligning two D-presentations of the same algebra.
DMap align_D(const DPresentation& d0, const DPresentation& d1, Fuel per_word_fuel = 20000);

// ---- Grothendieck construction ----

struct GrothendieckPresentation {
  AlgPresentation gp;  // group presentation over F_omega
  words::ProductPresentation pairs;
  // gamma_S: S-label -> group label, [(a, a_0)]
  std::function<GpWord(const SgWord&)> gamma;
  // canonical pair (P, N) of a group label: concatenated sigma components
  std::function<std::pair<std::optional<SgWord>, std::optional<SgWord>>(const GpWord&)>
      canonical_pair;
  // formal difference value through the semigroup invariant, when present
  std::function<std::optional<Rat>(const GpWord&)> value;
  bool decidable = false;
};

// G(S#) for a c.e. presentation of an abelian semigroup; when an additive
// complete invariant is supplied (cancellative computable case) the kernel
// is decided exactly, otherwise it is the z-search semidecision.
GrothendieckPresentation grothendieck(
    AlgPresentation s, std::function<std::optional<Rat>(const SgWord&)> invariant = nullptr,
    Fuel z_fuel = 4000);

// The universal map psi_phi: G(S) -> H induced by a computable semigroup
// morphism phi into a group presentation (phi given as a word map).
std::function<GpWord(const GpWord&)> universal_map(const GrothendieckPresentation& g,
                                                   std::function<GpWord(const SgWord&)> phi);

// G(phi) for a computable semigroup morphism phi: S0 -> S1 (word map).
std::function<GpWord(const GpWord&)> G_of_map(const GrothendieckPresentation& g0,
                                              const GrothendieckPresentation& g1,
                                              std::function<SgWord(const SgWord&)> phi);

// ---- K_0 ----

struct K0 {
  DPresentation d;
  GrothendieckPresentation g;

  // positive-cone semidecision (searches for w' with (w, gamma(w')) in the
  // kernel) and the parallel decision for linearly ordered instances.
  Tri cone_semidecide(const GpWord& w, Fuel fuel) const;
  Tri cone_decide(const GpWord& w, Fuel fuel) const;
  GpWord gamma_label(const SgWord& w) const;
  // exact rational image under the trace isomorphism (capability instances)
  std::optional<Rat> to_rational(const GpWord& w) const;
  // the label gamma([1_A]) when the unit class is locatable
  std::optional<GpWord> unit_label() const;
};
K0 k0(PresPtr a, Fuel kernel_fuel = 20000);

// ---- nonunital K_0 and K_1 ----

struct K0Nonunital {
  PresPtr unitized;
  K0 ktilde;       // K_0 of the unitization
  K0 kc;           // K_0 of the scalars C
  std::function<GpWord(const GpWord&)> k0_pi;  // K_0(pi): K_0(A~) -> K_0(C)
  words::CeWordSet kernel_set;                  // c.e. set of kernel labels
  words::SubgroupPresentation sub;              // presentation of ker K_0(pi)
};
K0Nonunital k0_nonunital(PresPtr a, Fuel kernel_fuel = 20000, Fuel stage_fuel = 400000);

// K_1(A) = K_0(SA) through the suspension presentation.
K0Nonunital k1(PresPtr a, Fuel kernel_fuel = 20000, Fuel stage_fuel = 400000);

}  // namespace ekt::kth
