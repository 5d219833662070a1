#include "ekt/cat/categoricity.hpp"

#include "ekt/error.hpp"
#include "ekt/fd/fd.hpp"

namespace ekt::cat {

using cstar::eval_limit_point;
using exact::pow2;

InterleaveResult interleave(const UhfCertificate& a, const UhfCertificate& b, std::size_t depth,
                            std::size_t stage_bound) {
  InterleaveResult out;
  Interleaving table;
  long l_prev = -1;
  std::size_t k = 0;
  for (std::size_t j = 0; j < depth; ++j) {
    table.k_seq.push_back(k);
    // l_j: least stage past the previous with m_{k_j} | n_{l_j}
    bool found = false;
    for (std::size_t l = static_cast<std::size_t>(l_prev + 1); l <= stage_bound; ++l) {
      if (b.limit->dim(l) % a.limit->dim(k) == 0) {
        table.l_seq.push_back(l);
        l_prev = static_cast<long>(l);
        found = true;
        break;
      }
    }
    if (!found) {
      out.mismatch_note = "supernatural mismatch suspected: no stage of B past " +
                          std::to_string(l_prev) + " within bound " +
                          std::to_string(stage_bound) + " absorbs stage " + std::to_string(k) +
                          " of A";
      return out;
    }
    if (j + 1 == depth) break;
    // k_{j+1}: least stage past k_j with n_{l_j} | m_{k_{j+1}}
    found = false;
    for (std::size_t kk = k + 1; kk <= stage_bound; ++kk) {
      if (a.limit->dim(kk) % b.limit->dim(static_cast<std::size_t>(l_prev)) == 0) {
        k = kk;
        found = true;
        break;
      }
    }
    if (!found) {
      out.mismatch_note = "supernatural mismatch suspected: no stage of A past " +
                          std::to_string(k) + " within bound " + std::to_string(stage_bound) +
                          " absorbs stage " + std::to_string(l_prev) + " of B";
      return out;
    }
  }
  out.table = std::move(table);
  return out;
}

IsoResult iso_approx(const UhfCertificate& a, const UhfCertificate& b, const StarPoly& pt, long k,
                     std::size_t max_depth) {
  IsoResult out;
  if (!a.canonical || !b.canonical) {
    out.note = "iso_approx requires canonical certificates";
    return out;
  }
  // The point is exact at some stage of A; find the interleaving depth whose
  // A-stage absorbs it, so the approximation step is exact.
  auto [stage, rep] = eval_limit_point(a.limit, pt, 1);
  InterleaveResult inter = interleave(a, b, max_depth);
  if (!inter.table) {
    out.note = inter.mismatch_note;
    return out;
  }
  const Interleaving& t = *inter.table;
  for (std::size_t j = 0; j < t.k_seq.size(); ++j) {
    std::size_t kj = t.k_seq[j];
    if (a.limit->dim(kj) % a.limit->dim(stage) != 0) continue;
    if (!a.limit->materializable(kj) || !b.limit->materializable(t.l_seq[j])) break;
    // rho' = the exact representative at stage k_j; image = psi_{l_j}(E(rho'))
    ExactMatrix rho = a.limit->dim_u64(kj) == a.limit->dim_u64(stage)
                          ? rep
                          : fd::canonical_embedding(a.limit->dim_u64(stage), a.limit->dim_u64(kj))
                                .apply(rep);
    std::size_t nl = b.limit->dim_u64(t.l_seq[j]);
    ExactMatrix image = fd::canonical_embedding(rho.rows(), nl).apply(rho);
    out.image = b.embed_point(t.l_seq[j], 1, image);
    out.depth_used = j;
    return out;
  }
  out.note = "Unknown: no interleaving stage absorbs the point within depth " +
             std::to_string(max_depth);
  (void)k;
  return out;
}

}  // namespace ekt::cat
