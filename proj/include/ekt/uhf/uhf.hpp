#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ekt/esets/esets.hpp"

namespace ekt::uhf {

using cstar::Element;
using cstar::LimitPtr;
using cstar::PointHandle;
using cstar::PresPtr;
using cstar::StarPoly;
using exact::ExactMatrix;
using exact::GQ;
using exact::Ival;
using exact::Rat;
using codec::Nat;
using words::Fuel;
using words::Tri;

// ---- counter machines ----

// Deterministic counter machine: increment, decrement-or-jump-if-zero, and
// accepting/rejecting halts.  The input is placed in counter 0.
struct CounterMachine {
  struct Instr {
    enum class Kind { Inc, DecJz, Accept, Reject } kind;
    std::size_t reg = 0;
    std::size_t target = 0;
  };
  std::vector<Instr> program;

  bool accepts_within(unsigned long input, unsigned long steps) const;
  // # W_{e,s}: inputs x <= s accepted within s steps.
  unsigned long accepted_count(unsigned long s) const;
};

CounterMachine machine_accept_all();
CounterMachine machine_reject_all();
CounterMachine machine_accept_even();

unsigned long nth_prime(std::size_t e);

// ---- supernatural numbers ----

// Monotone stagewise enumerator h_j: primes -> N with finite support per
// stage; the pointwise limit is the supernatural number.
class Supernatural {
 public:
  using StageMap = std::vector<std::pair<unsigned long, unsigned long>>;  // sorted by prime

  explicit Supernatural(std::function<StageMap(std::size_t)> stages);
  // Finite description: exponent per prime, nullopt meaning infinity
  // (h_j(p) = min(e, j), resp. j).
  static Supernatural from_exponents(
      const std::vector<std::pair<unsigned long, std::optional<unsigned long>>>& exps);

  StageMap stage(std::size_t j) const;     // memoized; monotonicity validated
  Nat stage_dim(std::size_t j) const;      // n_j = prod p^{h_j(p)}
  std::function<Nat(std::size_t)> dim_fn() const;

 private:
  std::shared_ptr<void> stage_impl_;
};

// The 0''-flavored example: h_s(p_e) = # W_{e,s} for the given machines.
Supernatural hard_supernatural(std::vector<CounterMachine> machines);

// Text format: lines "<prime> <exponent|inf>" or
// "machine <index> <instr>;<instr>;..." with instructions
// "inc <r>", "decjz <r> <target>", "accept", "reject".
Supernatural parse_supernatural(const std::string& text);
CounterMachine parse_machine_program(const std::string& text);

// Certificate dims text format: "dims powers <b>" | "dims factorial" |
// "dims explicit n0 n1 ..." | "dims machine <program>".
std::function<Nat(std::size_t)> parse_certificate_dims(const std::string& text);

// ---- UHF certificates ----

// A computable UHF certificate: stage dimensions with unital embeddings into
// the ambient presentation, nested and exhaustive.
struct UhfCertificate {
  LimitPtr limit;
  PresPtr pres;
  // psi_j applied to an exact stage matrix, as an element / rational point
  // of M_amp(A#).
  std::function<Element(std::size_t j, std::size_t amp, const ExactMatrix&)> embed;
  std::function<StarPoly(std::size_t j, std::size_t amp, const ExactMatrix&)> embed_point;
  bool canonical = false;  // psi_{j+1}^{-1} psi_j = E_{n_j, n_{j+1}} holds exactly
};

// Canonical direct-limit presentation of the UHF algebra of eps, with its
// certificate; dims n_j = prod p^{h_j(p)}.
std::pair<PresPtr, UhfCertificate> presentation_from_supernatural(const Supernatural& eps);

// Nondecreasing stream of p-adic valuations of the certificate dims; the
// supremum is eps(p).
std::vector<unsigned long> supernatural_from_certificate(const UhfCertificate& cert,
                                                         unsigned long p, std::size_t stages);

// Certified norm of a rational point through its stage representative.
Ival limit_norm(const UhfCertificate& cert, const StarPoly& pt, long k);

// Trace with the widened-disk output contract: the returned interval has
// width exactly 3 * 2^-k and is centered at the exact stage trace.
struct TraceResult {
  GQ exact;       // exact normalized trace of the stage representative
  Ival interval;  // real part, width 3 * 2^-k
};
TraceResult trace(const UhfCertificate& cert, const StarPoly& pt, long k);
TraceResult trace_amplified(const UhfCertificate& cert, std::size_t amp, const StarPoly& pt,
                            long k);

// Exact decision by trace equality (factor-like): points must be exact
// projections at some stage.
enum class MvnUhf { Equivalent, Inequivalent };
MvnUhf mvn_decide_uhf(const UhfCertificate& cert, std::size_t amp_p, const StarPoly& p,
                      std::size_t amp_q, const StarPoly& q);
// The comparable invariant: un-normalized trace value Tr(rep)/n_stage.
Rat mvn_trace_value(const UhfCertificate& cert, std::size_t amp, const StarPoly& p);

// Search for the unit as a computable point: scans the projection stream of
// A# for a candidate whose padded class is chain-confirmed equivalent to the
// given support projection of [1_A].
struct FindUnitResult {
  std::optional<PointHandle> unit;
  Fuel spent = 0;
  std::string note;
};
FindUnitResult find_unit(PresPtr a, std::size_t support_amp, const PointHandle& support,
                         Fuel fuel);

// ---- certificate extraction ----

struct ExtractOptions {
  std::size_t stages = 5;
  Fuel per_stage_fuel = 4000;
  // Points prepended to the canonical rational-point enumeration tracked by
  // the stage conditions (any fixed effective enumeration is admissible).
  std::vector<StarPoly> tracked_points;
  // Glimm modulus for diagnostics only; the searches do not consume it.
  std::function<Rat(const Rat&, std::size_t)> glimm_delta = [](const Rat& eps, std::size_t n) {
    return eps / (8 * static_cast<long>(n) * static_cast<long>(n));
  };
};

struct ExtractStage {
  std::size_t dim = 1;
  std::vector<StarPoly> units;  // dim^2 points, row-major
  long k_precision = 0;         // k_{t+1} used to find this stage
  Rat inv1_residual;            // certified upper bound over the tracked points
  bool inv2_exact = false;      // block-sum identities hold exactly
};

struct ExtractResult {
  bool complete = false;
  std::vector<ExtractStage> stages;
  std::string note;
  std::optional<UhfCertificate> certificate;
};

// Stagewise construction following the computable-certificate proof: at each
// stage searches the unital matrix-unit S_0 stream for an extension
// approximating the first t rational points and aligning with the previous
// stage units at precision k_{t+1}.
ExtractResult extract_certificate(PresPtr a, const ExtractOptions& opts);

// ---- Q(epsilon) ----

struct QEpsilonElement {
  Rat value;
  std::optional<std::size_t> stage;  // witness: denominator divides n_stage
};

class QEpsilon {
 public:
  explicit QEpsilon(Supernatural eps) : eps_(std::move(eps)) {}

  // Semidecision: Yes when the reduced denominator divides some explored
  // stage dimension.
  Tri member(const Rat& x, std::size_t stage_fuel, std::size_t* witness = nullptr) const;
  static QEpsilonElement add(const QEpsilonElement& a, const QEpsilonElement& b);
  static QEpsilonElement negate(const QEpsilonElement& a);
  static int compare(const QEpsilonElement& a, const QEpsilonElement& b);

 private:
  Supernatural eps_;
};

}  // namespace ekt::uhf
