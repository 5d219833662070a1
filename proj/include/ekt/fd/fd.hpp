#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ekt/exact/matrix.hpp"
#include "ekt/exact/opnorm.hpp"

namespace ekt::fd {

using exact::ExactMatrix;
using exact::GQ;
using exact::Ival;
using exact::Rat;

// Exact projection in M_n(C): p = p* = p^2.
struct ExactProjection {
  ExactMatrix matrix;
  explicit ExactProjection(ExactMatrix m);
};

bool is_exact_projection(const ExactMatrix& m);

// Canonical unital embedding E_{m,n} (m | n): block-diagonal repetition
// a_{r,s} |-> sum_l a_{r,s} e^(n)_{r+lm, s+lm}.
struct EmbeddingDesc {
  std::size_t m, n;
  ExactMatrix apply(const ExactMatrix& a) const;
};
EmbeddingDesc canonical_embedding(std::size_t m, std::size_t n);

// Murray-von Neumann witness in diagonal-corrected form: v = sum_i s_i u_i w_i*
// with orthogonal (unnormalized) column bases u_i of ran(p), w_i of ran(q) and
// s_i^2 = 1/(<u_i,u_i><w_i,w_i>).  v v* = p and v* v = q are verified exactly
// through the rational identities sum u_i u_i*/d_i = p, sum w_i w_i*/c_i = q.
struct MvnWitness {
  std::vector<std::vector<GQ>> u_cols, w_cols;
  std::vector<Rat> u_gram, w_gram;  // d_i = <u_i,u_i>, c_i = <w_i,w_i>
  std::vector<Rat> s_squared;

  ExactMatrix left() const;   // v v*
  ExactMatrix right() const;  // v* v
  bool verify(const ExactMatrix& p, const ExactMatrix& q) const;
  // The witness as a single Q(i) matrix, when all scale factors are rational.
  std::optional<ExactMatrix> as_matrix() const;
};

struct MvnFdResult {
  bool equivalent = false;
  std::optional<MvnWitness> witness;
};

// Decides Murray-von Neumann equivalence in M_n(C) by rank; inputs of
// different sizes are padded with zero blocks.
MvnFdResult mvn_decide_fd(const ExactProjection& p, const ExactProjection& q);

// (rank, normalized trace = rank / n).
std::pair<std::size_t, Rat> rank_trace(const ExactProjection& p);

// Result of rounding a near-projection: an exact projection when the
// relevant eigenvalues are rational, otherwise a dyadic-precision handle.
struct RoundedProjection {
  std::optional<ExactMatrix> exact;
  // approx(k): selfadjoint matrix within 2^-k of the limiting projection.
  std::function<ExactMatrix(long)> approx;
  Rat residual_ub;  // certified bound on max(||M^2-M||, ||M-M*||)
};

// Rounds M with certified residual max(||M^2-M||, ||M-M*||) < 1/4 to the
// nearby spectral projection; the result is within 2 * residual of M.
RoundedProjection spectral_round_to_projection(const ExactMatrix& m);

}  // namespace ekt::fd
