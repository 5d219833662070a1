// Small concrete presentations used across the test suites.
#pragma once

#include "ekt/words/presentation.hpp"

namespace testpres {

using namespace ekt::words;

// Exponent sum of a group word (every generator labels 1 in Z).
inline long exp_sum(const GpWord& w) {
  long s = 0;
  for (const Letter& l : w.letters) s += l.inv ? -1 : 1;
  return s;
}

// Z presented by nu(x_i) = 1 for every i.
inline AlgPresentation int_presentation() {
  AlgPresentation p;
  p.kind = AlgKind::group;
  p.label_map = [](const GpWord& w) { return std::to_string(exp_sum(w)); };
  p.kernel.mode = OracleMode::computable;
  p.kernel.decide = [](const GpWord& a, const GpWord& b, Fuel) {
    return exp_sum(a) == exp_sum(b) ? Tri::Yes : Tri::No;
  };
  return p;
}

// The trivial group presented by nu(x_i) = 0.
inline AlgPresentation trivial_group_presentation() {
  AlgPresentation p;
  p.kind = AlgKind::group;
  p.label_map = [](const GpWord&) { return std::string("0"); };
  p.kernel.mode = OracleMode::computable;
  p.kernel.decide = [](const GpWord&, const GpWord&, Fuel) { return Tri::Yes; };
  return p;
}

// Value of a positive word under nu(x_i) = i + 1 in (N^+, +).
inline ekt::codec::Nat nat_plus_value(const GpWord& w) {
  ekt::codec::Nat s = 0;
  for (const Letter& l : w.letters) s += l.gen + 1;
  return s;
}

// The additive semigroup of positive integers, nu(x_i) = i + 1.
inline AlgPresentation nat_plus_presentation() {
  AlgPresentation p;
  p.kind = AlgKind::semigroup;
  p.label_map = [](const GpWord& w) { return nat_plus_value(w).get_str(); };
  p.kernel.mode = OracleMode::computable;
  p.kernel.decide = [](const GpWord& a, const GpWord& b, Fuel) {
    return nat_plus_value(a) == nat_plus_value(b) ? Tri::Yes : Tri::No;
  };
  return p;
}

}  // namespace testpres
