#include <sstream>

#include "ekt/error.hpp"
#include "ekt/exact/opnorm.hpp"
#include "ekt/uhf/uhf.hpp"

namespace ekt::uhf {

using cstar::MatrixElem;
using cstar::StageElem;
using esets::ce_closed_from_relations;
using esets::matrix_unit_relations;
using esets::relation_residual;
using esets::tuple_points;
using exact::pow2;

namespace {

// Normalized trace of an exactly backed point.
std::optional<GQ> exact_trace(const PresPtr& a, const StarPoly& p) {
  Element e = a->eval(p);
  if (const auto* m = e.as<MatrixElem>()) return exact::trace_exact(m->matrix());
  if (const auto* s = e.as<StageElem>()) {
    GQ t = s->rep().trace_sum();
    long d = static_cast<long>(s->rep().rows());
    return GQ(t.re / d, t.im / d);
  }
  return std::nullopt;
}

// Conditional-expectation coefficients of rho onto the span of an exact
// matrix-unit system (tau(a_ss) = 1/m'), and the approximating point.
struct CeApprox {
  std::vector<GQ> coeff;
  StarPoly point;
};

std::optional<CeApprox> ce_approx(const PresPtr& a, const std::vector<StarPoly>& units,
                                  std::size_t m, const StarPoly& rho) {
  CeApprox out;
  out.coeff.resize(m * m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t s = 0; s < m; ++s) {
      // beta_rs = m' tau(a_rs^* rho) = m' tau(a_sr rho)
      StarPoly prod = units[s * m + r] * rho;
      auto t = exact_trace(a, prod);
      if (!t) return std::nullopt;
      GQ beta = *t * GQ::integer(static_cast<long>(m));
      out.coeff[r * m + s] = beta;
      if (!beta.is_zero()) out.point = out.point + units[r * m + s].scaled(beta);
    }
  return out;
}

// The working enumeration of rational points: optional tracked points first,
// then special points interleaved with the canonical point list.
StarPoly tracked_point(const std::vector<StarPoly>& tracked, std::size_t i) {
  if (i < tracked.size()) return tracked[i];
  std::size_t j = i - tracked.size();
  if (j % 2 == 0) return StarPoly::generator(Nat(static_cast<unsigned long>(j / 2)));
  return cstar::starpoly_decode(Nat(static_cast<unsigned long>((j - 1) / 2)));
}

}  // namespace

ExtractResult extract_certificate(PresPtr a, const ExtractOptions& opts) {
  ExtractResult out;
  if (!a->unit) {
    out.note = "extract_certificate requires a unital presentation";
    return out;
  }

  std::vector<std::size_t> dims{1};
  // units[t] holds the n_t^2 points of G^{(t, current)}
  std::vector<std::vector<StarPoly>> units{{*a->unit}};
  // alpha[(n, t')] coefficient arrays, keyed by n * (stages+2) + t'
  std::map<std::pair<std::size_t, std::size_t>, std::vector<GQ>> alpha;

  std::vector<ExtractStage> record;
  {
    ExtractStage st;
    st.dim = 1;
    st.units = units[0];
    st.inv2_exact = true;
    record.push_back(st);
  }

  for (std::size_t t = 0; t + 1 <= opts.stages; ++t) {
    std::size_t nt = dims[t];
    // precision schedule k_{t+1}
    Rat product = pow2(static_cast<long>(t) + 1) * static_cast<long>(nt);
    bool schedule_ok = true;
    for (std::size_t tp = 1; tp <= t && schedule_ok; ++tp) {
      for (std::size_t n = 0; n < tp; ++n) {
        StarPoly rho = tracked_point(opts.tracked_points, n);
        Rat rho_norm_ub = a->norm(rho, 6).hi;
        // residual ||rho_n - sum alpha g^{(t')}||
        auto it = alpha.find({n, tp});
        if (it == alpha.end()) continue;
        StarPoly approxp;
        std::size_t mtp = dims[tp];
        for (std::size_t r = 0; r < mtp; ++r)
          for (std::size_t s = 0; s < mtp; ++s) {
            const GQ& b = it->second[r * mtp + s];
            if (!b.is_zero()) approxp = approxp + units[tp][r * mtp + s].scaled(b);
          }
        Rat resid_ub = a->norm(rho - approxp, static_cast<long>(tp) + 6).hi;
        Rat denom = pow2(-static_cast<long>(tp)) - resid_ub;
        if (denom <= 0) {
          schedule_ok = false;
          break;
        }
        product *= Rat(static_cast<long>(nt * mtp)) * (rho_norm_ub + pow2(-static_cast<long>(tp)) + 1) /
                   denom;
      }
    }
    if (!schedule_ok) {
      out.note = "stage " + std::to_string(t + 1) + ": precision schedule degenerated";
      return out;
    }
    long k = static_cast<long>(t) + 2;
    {
      // k_{t+1} = ceil(log2(product)), floored at t+2 so the alpha update
      // below meets its 2^-(t+1) contract.
      Nat num = product.get_num(), den = product.get_den();
      long bits = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
                  static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)) + 1;
      if (bits + 1 > k) k = bits + 1;
    }

    // search for the next stage system
    std::optional<std::vector<StarPoly>> found;
    std::size_t found_m = 0;
    Fuel spent = 0;
    for (Nat budget(0); spent < opts.per_stage_fuel && !found; budget += 1) {
      ++spent;
      auto [mi, slot] = codec::unpair(budget);
      std::size_t m_factor = 1 + static_cast<std::size_t>(codec::fold_index(mi, 8)) - 1;
      std::size_t msz = m_factor * nt;
      esets::RelationSystem rel = matrix_unit_relations(msz, true, *a->unit);
      esets::CeClosedSet stream = ce_closed_from_relations(a, rel);
      auto ball = stream.balls(slot * 2 + 1);  // hint lane
      if (!ball) continue;
      std::vector<StarPoly> sys = tuple_points(ball->center, msz * msz);
      // condition (3): alignment with the previous stage units
      bool ok = true;
      for (std::size_t r = 0; r < nt && ok; ++r)
        for (std::size_t s = 0; s < nt && ok; ++s) {
          StarPoly blocks;
          for (std::size_t l = 0; l < m_factor; ++l)
            blocks = blocks + sys[(r + l * nt) * msz + (s + l * nt)];
          Ival d = a->norm(units[t][r * nt + s] - blocks, k + 2);
          if (!(d.hi < pow2(-k))) ok = false;
        }
      // condition (2): the tracked points are near the span
      for (std::size_t n = 0; n <= t && ok; ++n) {
        StarPoly rho = tracked_point(opts.tracked_points, n);
        auto ce = ce_approx(a, sys, msz, rho);
        if (!ce) {
          ok = false;
          break;
        }
        Ival d = a->norm(rho - ce->point, k + 2);
        if (!(d.hi < pow2(-k))) ok = false;
      }
      if (ok) {
        found = std::move(sys);
        found_m = msz;
      }
    }
    if (!found) {
      out.note = "stage " + std::to_string(t + 1) + ": search exhausted fuel (" +
                 std::to_string(opts.per_stage_fuel) + ")";
      return out;
    }

    dims.push_back(found_m);
    units.push_back(std::move(*found));
    // alpha^{(n, t+1)} via conditional expectation (residual < 2^-(t+1))
    for (std::size_t n = 0; n <= t; ++n) {
      StarPoly rho = tracked_point(opts.tracked_points, n);
      auto ce = ce_approx(a, units[t + 1], found_m, rho);
      if (!ce) {
        out.note = "stage " + std::to_string(t + 1) + ": trace oracle unavailable";
        return out;
      }
      alpha[{n, t + 1}] = ce->coeff;
    }
    // backwards recursion: rebuild every lower stage from the new top
    bool inv2 = true;
    for (std::size_t j = t + 1; j-- > 0;) {
      std::size_t nj = dims[j], njj = dims[j + 1], copies = njj / nj;
      std::vector<StarPoly> rebuilt(nj * nj);
      for (std::size_t r = 0; r < nj; ++r)
        for (std::size_t s = 0; s < nj; ++s) {
          StarPoly sum;
          for (std::size_t l = 0; l < copies; ++l)
            sum = sum + units[j + 1][(r + l * nj) * njj + (s + l * nj)];
          rebuilt[r * nj + s] = sum;
        }
      for (std::size_t i = 0; i < nj * nj && inv2; ++i)
        inv2 = a->eval(rebuilt[i] - units[j][i]).exactly_zero();
      units[j] = std::move(rebuilt);
    }

    ExtractStage st;
    st.dim = found_m;
    st.units = units[t + 1];
    st.k_precision = k;
    st.inv2_exact = inv2;
    // INV-1 residuals at the completed stage
    Rat worst(0);
    for (std::size_t n = 0; n <= t; ++n) {
      auto it = alpha.find({n, t + 1});
      StarPoly rho = tracked_point(opts.tracked_points, n);
      StarPoly approxp;
      for (std::size_t r = 0; r < found_m; ++r)
        for (std::size_t s = 0; s < found_m; ++s) {
          const GQ& b = it->second[r * found_m + s];
          if (!b.is_zero()) approxp = approxp + units[t + 1][r * found_m + s].scaled(b);
        }
      Rat ub = a->norm(rho - approxp, static_cast<long>(t) + 8).hi;
      if (ub > worst) worst = ub;
      if (!(ub < pow2(-static_cast<long>(t) - 1))) {
        out.note = "stage " + std::to_string(t + 1) + ": INV-1 residual too large";
        out.stages = std::move(record);
        return out;
      }
    }
    st.inv1_residual = worst;
    record.push_back(std::move(st));
  }

  out.stages = std::move(record);
  out.complete = true;

  // package as a certificate
  auto dims_copy = dims;
  auto limit = std::make_shared<cstar::DirectLimit>([dims_copy](std::size_t j) {
    return Nat(static_cast<unsigned long>(j < dims_copy.size() ? dims_copy[j] : dims_copy.back()));
  });
  auto units_copy = std::make_shared<std::vector<std::vector<StarPoly>>>(units);
  UhfCertificate cert;
  cert.limit = limit;
  cert.pres = a;
  cert.canonical = true;
  auto embed_point = [units_copy, dims_copy, a](std::size_t j, std::size_t amp,
                                                const ExactMatrix& x) {
    std::size_t stage = std::min(j, dims_copy.size() - 1);
    std::size_t nj = dims_copy[stage];
    if (x.rows() != amp * nj) throw DimensionError("extracted embed: size mismatch");
    StarPoly out_p;
    for (std::size_t R = 0; R < amp; ++R)
      for (std::size_t C = 0; C < amp; ++C) {
        StarPoly block;
        for (std::size_t r = 0; r < nj; ++r)
          for (std::size_t s = 0; s < nj; ++s) {
            const GQ& v = x.at(R * nj + r, C * nj + s);
            if (!v.is_zero()) block = block + (*units_copy)[stage][r * nj + s].scaled(v);
          }
        if (block.is_zero_poly()) continue;
        out_p = out_p + (amp == 1 ? block : cstar::amplify_inject(block, amp, R + 1, C + 1));
      }
    return out_p;
  };
  cert.embed_point = embed_point;
  cert.embed = [a, embed_point](std::size_t j, std::size_t amp, const ExactMatrix& x) {
    return a->eval(embed_point(j, amp, x));
  };
  out.certificate = std::move(cert);
  return out;
}

}  // namespace ekt::uhf
