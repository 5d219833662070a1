#include <set>
#include <sstream>

#include "ekt/error.hpp"
#include "ekt/uhf/uhf.hpp"

namespace ekt::uhf {

using cstar::amplify;
using cstar::limit_matrix_point;
using cstar::limit_presentation;
using cstar::StageElem;
using esets::ce_closed_from_relations;
using esets::find_point_in_intersection;
using esets::mvn_semidecide;
using esets::pad_matrix_point;
using esets::pad_point_level;
using esets::projection_relations;
using exact::pow2;

std::pair<PresPtr, UhfCertificate> presentation_from_supernatural(const Supernatural& eps) {
  auto limit = std::make_shared<cstar::DirectLimit>(eps.dim_fn());
  PresPtr pres = limit_presentation(limit);
  UhfCertificate cert;
  cert.limit = limit;
  cert.pres = pres;
  cert.canonical = true;
  cert.embed = [limit](std::size_t j, std::size_t amp, const ExactMatrix& m) {
    if (m.rows() != amp * limit->dim_u64(j)) throw DimensionError("embed: size mismatch");
    return StageElem::make(limit, j, m);
  };
  cert.embed_point = [limit](std::size_t j, std::size_t amp, const ExactMatrix& m) {
    return limit_matrix_point(*limit, amp, j, m);
  };
  return {pres, cert};
}

std::vector<unsigned long> supernatural_from_certificate(const UhfCertificate& cert,
                                                         unsigned long p, std::size_t stages) {
  std::vector<unsigned long> out;
  out.reserve(stages);
  for (std::size_t j = 0; j < stages; ++j) {
    Nat d = cert.limit->dim(j);
    Nat prime(p);
    unsigned long v = static_cast<unsigned long>(
        mpz_remove(d.get_mpz_t(), d.get_mpz_t(), prime.get_mpz_t()));
    out.push_back(v);
  }
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] < out[i - 1]) throw Error("supernatural_from_certificate: valuations decreased");
  return out;
}

Ival limit_norm(const UhfCertificate& cert, const StarPoly& pt, long k) {
  return cert.pres->norm(pt, k);
}

TraceResult trace_amplified(const UhfCertificate& cert, std::size_t amp, const StarPoly& pt,
                            long k) {
  auto [stage, rep] = cstar::eval_limit_point(cert.limit, pt, amp);
  GQ t = rep.trace_sum();
  long nj = static_cast<long>(cert.limit->dim_u64(stage));
  TraceResult out;
  out.exact = GQ(t.re / nj, t.im / nj);
  Rat half_width = 3 * pow2(-k) / 2;
  out.interval = Ival(out.exact.re - half_width, out.exact.re + half_width);
  return out;
}

TraceResult trace(const UhfCertificate& cert, const StarPoly& pt, long k) {
  return trace_amplified(cert, 1, pt, k);
}

Rat mvn_trace_value(const UhfCertificate& cert, std::size_t amp, const StarPoly& p) {
  auto [stage, rep] = cstar::eval_limit_point(cert.limit, p, amp);
  if (!(rep == rep.adjoint()) || !(rep * rep == rep))
    throw Error("mvn_decide_uhf: input is not an exact stage projection");
  GQ t = rep.trace_sum();
  if (t.im != 0) throw Error("mvn_decide_uhf: projection trace must be real");
  Rat v = t.re / static_cast<long>(cert.limit->dim_u64(stage));
  v.canonicalize();
  return v;
}

MvnUhf mvn_decide_uhf(const UhfCertificate& cert, std::size_t amp_p, const StarPoly& p,
                      std::size_t amp_q, const StarPoly& q) {
  return mvn_trace_value(cert, amp_p, p) == mvn_trace_value(cert, amp_q, q)
             ? MvnUhf::Equivalent
             : MvnUhf::Inequivalent;
}

FindUnitResult find_unit(PresPtr a, std::size_t support_amp, const PointHandle& support,
                         Fuel fuel) {
  FindUnitResult out;
  esets::CeClosedSet proj = ce_closed_from_relations(a, projection_relations());
  PresPtr pres_n = support_amp == 1 ? a : amplify(a, support_amp);

  Fuel spent = 0;
  std::set<Nat> seen_centers;
  for (Nat slot(0); spent < fuel; slot += 1) {
    ++spent;
    auto ball = proj.balls(slot);
    if (!ball || ball->radius > Rat(1, 8)) continue;
    if (!seen_centers.insert(ball->center).second) continue;
    // candidate projection inside this ball
    esets::CeOpenSet u;
    u.pres = a;
    esets::RationalBall b = *ball;
    u.balls = [b](const Nat& s) -> std::optional<esets::RationalBall> {
      if (s == 0) return b;
      return std::nullopt;
    };
    esets::IntersectionResult cand = find_point_in_intersection(u, proj, 4, 20000);
    if (!cand.point) continue;
    // pad the candidate into M_{support_amp}(A) and confirm the class
    PointHandle padded = *cand.point;
    if (support_amp != 1) {
      PointHandle inner = *cand.point;
      padded = PointHandle(pres_n, [inner, support_amp](long k) {
        return pad_point_level(inner.approx(k), 1, support_amp);
      });
    }
    Fuel chain_fuel = std::min<Fuel>(4000, fuel - spent);
    esets::MvnResult mv = mvn_semidecide(a, support_amp, padded, support, chain_fuel);
    spent += mv.spent;
    if (mv.verdict == Tri::Yes) {
      out.unit = cand.point;
      out.spent = spent;
      return out;
    }
  }
  out.spent = spent;
  out.note = "Unknown: unit search exhausted fuel";
  return out;
}

}  // namespace ekt::uhf
