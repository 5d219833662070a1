#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ekt/uhf/uhf.hpp"

namespace ekt::cat {

using cstar::StarPoly;
using exact::ExactMatrix;
using exact::Ival;
using codec::Nat;
using uhf::UhfCertificate;
using words::Fuel;

// Interleaving of two certificate stage sequences: m_{k_j} | n_{l_j} and
// n_{l_j} | m_{k_{j+1}}, with minimal choices and k_0 = 0 (max over the
// empty index set is taken as -1).
struct Interleaving {
  std::vector<std::size_t> k_seq, l_seq;
};

struct InterleaveResult {
  std::optional<Interleaving> table;
  // Set when the divisibility search ran past its bound: the stage reached
  // and the bound used.  A mismatch of supernatural numbers is only ever
  // suspected, never verdicted.
  std::string mismatch_note;
};

InterleaveResult interleave(const UhfCertificate& a, const UhfCertificate& b, std::size_t depth,
                            std::size_t stage_bound = 512);

// One step of the isomorphism gamma-bar: maps a rational point of A# to a
// rational point of B# within 2^-k, through psi_{l_j} E phi_{k_j}^{-1}.
struct IsoResult {
  std::optional<StarPoly> image;
  std::size_t depth_used = 0;
  std::string note;
};

IsoResult iso_approx(const UhfCertificate& a, const UhfCertificate& b, const StarPoly& pt, long k,
                     std::size_t max_depth = 64);

}  // namespace ekt::cat
