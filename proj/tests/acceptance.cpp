// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <chrono>
#include <iostream>
#include <random>
#include <set>
#include <vector>

#include "ekt/cat/categoricity.hpp"
#include "ekt/fd/fd.hpp"
#include "ekt/ktheory/ktheory.hpp"
#include "oracles.hpp"
#include "presentations_util.hpp"

using namespace ekt;
using namespace ekt::exact;
using cstar::PresPtr;
using cstar::StarPoly;
using ekt::codec::Nat;
namespace codec = ekt::codec;
using words::GpWord;
using words::SgWord;
using words::Tri;

namespace {

int failures = 0;

void report(int id, const std::string& what, bool ok, const std::string& detail = "") {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << what;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << std::endl;
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ExactMatrix random_matrix(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<long> num(-10, 10);
  std::uniform_int_distribution<long> den(1, 10);
  ExactMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      Rat re(num(rng), den(rng)), im(num(rng), den(rng));
      re.canonicalize();
      im.canonicalize();
      m.at(r, c) = GQ(re, im);
    }
  return m;
}

// criteria 1 and 2: certified norms against the independent Sturm oracle,
// and the max/1-norm sandwich
void criterion_1_2() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(1123581321);
  bool contains = true, width_ok = true, sandwich = true;
  for (int trial = 0; trial < 200; ++trial) {
    ExactMatrix m = random_matrix(rng, 3);
    Ival got = certified_opnorm(m, 20);
    Ival want = oracle::opnorm_oracle(m, 28);
    width_ok = width_ok && got.width() <= pow2(-20);
    contains = contains && got.intersects(want);  // both contain the true norm
    auto [mx, one] = norm_bounds(m);
    sandwich = sandwich && mx <= got.hi + pow2(-19) && got.lo <= one + pow2(-19);
  }
  double dt = seconds_since(t0);
  report(1, "certified norms bracket the Sturm oracle at k=20 on 200 random 3x3 matrices",
         contains && width_ok && dt < 60.0,
         "runtime " + std::to_string(dt).substr(0, 5) + "s");
  report(2, "max/1-norm sandwich holds within 2^-19 slack on the same sample", sandwich);
}

void criterion_3() {
  kth::GrothendieckPresentation g = kth::grothendieck(
      testpres::nat_plus_presentation(), [](const SgWord& w) -> std::optional<Rat> {
        Rat v(0);
        for (const Nat& gi : w.gens) v += Rat(gi + 1);
        return v;
      });
  auto value_word = [](unsigned long v) { return SgWord::single(Nat(v - 1)); };
  bool ok = g.decidable;
  int checked = 0;
  for (unsigned long a = 1; a <= 6 && ok; ++a)
    for (unsigned long b = 1; b <= 6 && ok; ++b)
      for (unsigned long c = 1; c <= 6 && ok; ++c)
        for (unsigned long d = 1; d <= 6 && ok; ++d) {
          GpWord w1 = g.pairs.pair_label(words::as_group_word(value_word(a)),
                                         words::as_group_word(value_word(b)));
          GpWord w2 = g.pairs.pair_label(words::as_group_word(value_word(c)),
                                         words::as_group_word(value_word(d)));
          Tri r = g.gp.in_kernel(w1, w2, 16);
          ok = ok && r != Tri::Unknown && (r == Tri::Yes) == (a + d == b + c);
          ++checked;
          // two-letter pair words keep the oracle agreement
          if (a <= 3 && b <= 3 && c <= 3 && d <= 3) {
            GpWord u = words::gp_concat(w1, w2);  // labels (a+c, b+d)
            GpWord v = g.pairs.pair_label(words::as_group_word(value_word(a + c)),
                                          words::as_group_word(value_word(b + d)));
            ok = ok && g.gp.in_kernel(u, v, 16) == Tri::Yes;
          }
        }
  report(3, "Grothendieck kernel of (N^+,+) agrees with the a+d=b+c oracle exhaustively",
         ok, std::to_string(checked) + " pairs, decision total");
}

void criterion_4() {
  PresPtr c = cstar::scalar_presentation();
  const words::Fuel sound_fuel = 700, complete_fuel = 30000;
  bool sound = true, complete = true;
  for (std::size_t n = 1; n <= 3; ++n) {
    PresPtr pres_n = n == 1 ? c : cstar::amplify(c, n);
    std::vector<ExactMatrix> diags;
    for (std::size_t bits = 0; bits < (1u << n); ++bits) {
      std::vector<GQ> d(n);
      for (std::size_t i = 0; i < n; ++i) d[i] = GQ::integer((bits >> i) & 1);
      diags.push_back(ExactMatrix::diag(d));
    }
    for (const auto& p : diags)
      for (const auto& q : diags) {
        bool want =
            fd::mvn_decide_fd(fd::ExactProjection(p), fd::ExactProjection(q)).equivalent;
        auto point = [&](const ExactMatrix& m) {
          return cstar::PointHandle::exact_point(
              pres_n, n == 1 ? cstar::scalar_matrix_point(1, m)
                             : cstar::scalar_matrix_point(n, m));
        };
        if (!want) {
          esets::MvnResult r = esets::mvn_semidecide(c, n, point(p), point(q), sound_fuel);
          sound = sound && r.verdict != Tri::Yes;
        } else if (n <= 2) {
          esets::MvnResult r = esets::mvn_semidecide(c, n, point(p), point(q), complete_fuel);
          complete = complete && r.verdict == Tri::Yes;
        }
      }
  }
  report(4, "MvN chain search: sound on all diagonal pairs (n<=3), complete for n<=2",
         sound && complete,
         "fuel " + std::to_string(sound_fuel) + "/" + std::to_string(complete_fuel));
}

void criterion_5() {
  auto [pres, cert] =
      uhf::presentation_from_supernatural(uhf::Supernatural::from_exponents({{2, std::nullopt}}));
  bool ok = true;
  for (std::size_t j = 1; j <= 10; ++j) {
    std::size_t nj = std::size_t(1) << j;
    uhf::TraceResult t = uhf::trace(cert, cert.embed_point(j, 1, ExactMatrix::unit(nj, 1, 1)), 16);
    ok = ok && t.interval.contains(Rat(1, static_cast<long>(nj))) &&
         t.exact == GQ(Rat(1, static_cast<long>(nj))) && t.interval.width() <= 3 * pow2(-16);
  }
  report(5, "UHF trace of psi_j(E11) brackets 2^-j with width <= 3*2^-16 for j <= 10", ok);
}

void criterion_6() {
  auto [pres, cert] =
      uhf::presentation_from_supernatural(uhf::Supernatural::from_exponents({{2, std::nullopt}}));
  kth::K0 k = kth::k0(pres);
  bool ok = true;
  auto unit = k.unit_label();
  ok = ok && unit && *k.to_rational(*unit) == Rat(1);

  std::mt19937 rng(987654321);
  auto random_label = [&]() {
    std::vector<Nat> ga, gb;
    ga.push_back(codec::pair(Nat(rng() % 2), Nat(rng() % 80)));
    if (rng() % 2) ga.push_back(codec::pair(Nat(rng() % 2), Nat(rng() % 80)));
    gb.push_back(codec::pair(Nat(rng() % 2), Nat(rng() % 80)));
    if (rng() % 3 == 0) gb.push_back(codec::pair(Nat(rng() % 2), Nat(rng() % 80)));
    return words::gp_concat(k.g.gamma(SgWord(ga)), words::gp_inverse(k.g.gamma(SgWord(gb))));
  };
  int eq_checked = 0, cone_checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    GpWord w1 = random_label(), w2 = random_label();
    auto v1 = k.to_rational(w1), v2 = k.to_rational(w2);
    ok = ok && v1 && v2;
    if (!ok) break;
    Tri eq = k.g.gp.in_kernel(w1, w2, 16);
    ok = ok && eq != Tri::Unknown && (eq == Tri::Yes) == (*v1 == *v2);
    ++eq_checked;
    Tri pos = k.cone_decide(w1, 8192);
    ok = ok && pos != Tri::Unknown && (pos == Tri::Yes) == (*v1 >= 0);
    ++cone_checked;
  }
  report(6, "K_0(2^infty) = Z[1/2]: label equality and cone match the rational image",
         ok, std::to_string(eq_checked) + " equality + " + std::to_string(cone_checked) +
                 " cone decisions; gamma[1] -> 1");
}

void criterion_7() {
  std::mt19937 rng(246810);
  std::vector<unsigned long> primes{2, 3, 5, 7, 11, 13};
  bool ok = true;
  for (int trial = 0; trial < 50 && ok; ++trial) {
    std::vector<std::pair<unsigned long, std::optional<unsigned long>>> exps;
    std::vector<unsigned long> want(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) {
      unsigned long e = rng() % 9;
      want[i] = e;
      if (e > 0) exps.emplace_back(primes[i], e);
    }
    auto [pres, cert] =
        uhf::presentation_from_supernatural(uhf::Supernatural::from_exponents(exps));
    for (std::size_t i = 0; i < primes.size(); ++i) {
      auto stream = uhf::supernatural_from_certificate(cert, primes[i], 10);
      ok = ok && stream.back() == want[i];
      for (std::size_t j = 1; j < stream.size(); ++j) ok = ok && stream[j - 1] <= stream[j];
    }
  }
  report(7, "supernatural round trip is exact on 50 samples (primes <= 13, exponents <= 8)", ok);
}

void criterion_8() {
  auto [pres, cert] =
      uhf::presentation_from_supernatural(uhf::Supernatural::from_exponents({{2, std::nullopt}}));
  uhf::ExtractOptions opts;
  opts.stages = 5;
  opts.per_stage_fuel = 4000;
  uhf::ExtractResult r = uhf::extract_certificate(pres, opts);
  bool ok = r.complete && r.stages.size() == 6;
  std::string dims;
  for (std::size_t t = 0; ok && t < r.stages.size(); ++t) {
    const auto& st = r.stages[t];
    ok = ok && st.inv2_exact;
    if (t > 0) {
      ok = ok && st.dim % r.stages[t - 1].dim == 0;
      // INV-1: residuals of the tracked points below the stage bound 2^-t
      ok = ok && st.inv1_residual < pow2(-static_cast<long>(t));
    }
    if (!dims.empty()) dims += " ";
    dims += std::to_string(st.dim);
  }
  report(8, "certificate extraction completes 5 stages with INV-2 exact and INV-1 bounded", ok,
         "dims " + dims + (r.note.empty() ? "" : "; " + r.note));
}

void criterion_9() {
  auto t0 = std::chrono::steady_clock::now();
  auto [presA, certA] =
      uhf::presentation_from_supernatural(uhf::Supernatural::from_exponents({{2, std::nullopt}}));
  auto limit4 = std::make_shared<cstar::DirectLimit>([](std::size_t j) {
    Nat n;
    mpz_ui_pow_ui(n.get_mpz_t(), 4, static_cast<unsigned long>(j));
    return n;
  });
  uhf::UhfCertificate certB;
  certB.limit = limit4;
  certB.pres = cstar::limit_presentation(limit4);
  certB.canonical = true;
  certB.embed_point = [limit4](std::size_t j, std::size_t amp, const ExactMatrix& m) {
    return cstar::limit_matrix_point(*limit4, amp, j, m);
  };

  // hand-derived table: l ascends one stage at a time, k must absorb 4^l
  cat::InterleaveResult inter = cat::interleave(certA, certB, 6);
  std::vector<std::size_t> want_k{0, 1, 2, 4, 6, 8}, want_l{0, 1, 2, 3, 4, 5};
  bool table_ok = inter.table && inter.table->k_seq == want_k && inter.table->l_seq == want_l;
  if (inter.table)
    for (std::size_t j = 0; j < want_k.size() && table_ok; ++j) {
      table_ok = table_ok &&
                 certB.limit->dim(inter.table->l_seq[j]) % certA.limit->dim(inter.table->k_seq[j]) == 0;
      if (j + 1 < want_k.size())
        table_ok = table_ok && certA.limit->dim(inter.table->k_seq[j + 1]) %
                                       certB.limit->dim(inter.table->l_seq[j]) ==
                                   0;
    }

  // 50 sampled points: isometry, multiplicativity, adjoints, trace, round trip
  std::mt19937 rng(555);
  bool iso_ok = true;
  const Rat tol = pow2(-6);
  std::vector<StarPoly> samples;
  for (int i = 0; i < 50; ++i) {
    std::size_t stage = 1 + (rng() % 2);
    std::size_t nj = certA.limit->dim_u64(stage);
    ExactMatrix m(nj, nj);
    for (int edits = 0; edits < 3; ++edits) {
      Rat re(static_cast<long>(rng() % 5) - 2, static_cast<long>(rng() % 3) + 1);
      Rat im(static_cast<long>(rng() % 5) - 2, static_cast<long>(rng() % 3) + 1);
      re.canonicalize();
      im.canonicalize();
      m.at(rng() % nj, rng() % nj) = GQ(re, im);
    }
    samples.push_back(certA.embed_point(stage, 1, m));
  }
  for (std::size_t i = 0; i < samples.size() && iso_ok; ++i) {
    cat::IsoResult img = cat::iso_approx(certA, certB, samples[i], 8);
    iso_ok = iso_ok && img.image.has_value();
    if (!iso_ok) break;
    // approximate isometry: |norm(image) - norm(p)| <= 2^-7 certified
    Ival na = presA->norm(samples[i], 10), nb = certB.pres->norm(*img.image, 10);
    iso_ok = iso_ok && (na.widen(pow2(-7)).intersects(nb));
    // trace equivariance
    iso_ok = iso_ok && uhf::trace(certA, samples[i], 12).exact ==
                           uhf::trace(certB, *img.image, 12).exact;
    // round trip
    cat::IsoResult back = cat::iso_approx(certB, certA, *img.image, 8);
    iso_ok = iso_ok && back.image.has_value() &&
             presA->norm(samples[i] - *back.image, 10).hi <= pow2(-6);
    if (i + 1 < samples.size()) {
      // multiplicativity and additivity against the partner sample
      const StarPoly& q = samples[i + 1];
      cat::IsoResult imq = cat::iso_approx(certA, certB, q, 8);
      cat::IsoResult improd = cat::iso_approx(certA, certB, samples[i] * q, 8);
      cat::IsoResult imsum = cat::iso_approx(certA, certB, samples[i] + q, 8);
      cat::IsoResult imadj = cat::iso_approx(certA, certB, samples[i].adjoint(), 8);
      iso_ok = iso_ok && imq.image && improd.image && imsum.image && imadj.image;
      if (!iso_ok) break;
      iso_ok = iso_ok &&
               certB.pres->norm(*improd.image - *img.image * *imq.image, 10).hi <= tol &&
               certB.pres->norm(*imsum.image - (*img.image + *imq.image), 10).hi <= tol &&
               certB.pres->norm(*imadj.image - img.image->adjoint(), 10).hi <= tol;
    }
  }
  double dt = seconds_since(t0);
  report(9, "categoricity: interleaving table and iso checks on 50 samples", table_ok && iso_ok && dt < 120.0,
         "runtime " + std::to_string(dt).substr(0, 5) + "s");
}

void criterion_10() {
  uhf::CounterMachine none = uhf::machine_reject_all();
  uhf::CounterMachine all = uhf::machine_accept_all();
  uhf::CounterMachine even = uhf::machine_accept_even();
  uhf::Supernatural eps = uhf::hard_supernatural({none, all, even});
  bool ok = true;
  std::vector<unsigned long> prev{0, 0, 0};
  for (std::size_t s = 0; s <= 1000 && ok; s += (s < 50 ? 1 : 25)) {
    auto stage = eps.stage(s);
    std::vector<unsigned long> cur{0, 0, 0};
    for (const auto& [p, e] : stage) {
      if (p == 2) cur[0] = e;
      if (p == 3) cur[1] = e;
      if (p == 5) cur[2] = e;
    }
    for (int i = 0; i < 3; ++i) ok = ok && cur[i] >= prev[i];
    ok = ok && cur[0] == 0;  // the never-accepting machine stays at 0
    prev = cur;
  }
  auto [pres, cert] = uhf::presentation_from_supernatural(eps);
  ok = ok && cert.limit->dim(3) > 0 && pres->unit.has_value();
  report(10, "hard supernatural: monotone machine stages over 10^3 steps feed the builder", ok);
}

void criterion_11() {
  kth::K0Nonunital k = kth::k1(cstar::scalar_presentation(), 20000, 800000);
  bool ok = true;
  std::string verdicts;
  for (unsigned long n = 0; n < 5; ++n) {
    GpWord lab = k.sub.generator_label(Nat(n));
    Tri r = k.ktilde.g.gp.in_kernel(lab, GpWord{}, 100000);
    ok = ok && r == Tri::Yes;
    if (!verdicts.empty()) verdicts += " ";
    verdicts += (r == Tri::Yes ? "identity" : "unknown");
  }
  report(11, "K_1(C) smoke: first 5 labels confirmed equal to the identity within fuel 10^5", ok,
         verdicts);
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  criterion_1_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : std::to_string(failures) + " FAILURES")
            << " (total " << std::to_string(seconds_since(t0)).substr(0, 6) << "s)" << std::endl;
  return failures == 0 ? 0 : 1;
}
