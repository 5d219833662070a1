#include "ekt/fd/fd.hpp"

#include <memory>
#include <mutex>

#include "ekt/error.hpp"
#include "ekt/exact/poly.hpp"

namespace ekt::fd {

using exact::certified_opnorm;
using exact::Int;
using exact::Poly;
using exact::pow2;

bool is_exact_projection(const ExactMatrix& m) {
  return m.square() && m == m.adjoint() && m * m == m;
}

ExactProjection::ExactProjection(ExactMatrix m) : matrix(std::move(m)) {
  if (!is_exact_projection(matrix)) throw Error("ExactProjection: input is not p = p* = p^2");
}

EmbeddingDesc canonical_embedding(std::size_t m, std::size_t n) {
  if (m == 0 || n % m != 0) throw DimensionError("canonical_embedding: m must divide n");
  return EmbeddingDesc{m, n};
}

ExactMatrix EmbeddingDesc::apply(const ExactMatrix& a) const {
  if (a.rows() != m || a.cols() != m) throw DimensionError("canonical embedding: size mismatch");
  ExactMatrix out(n, n);
  for (std::size_t l = 0; l < n / m; ++l)
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) {
        const GQ& v = a.at(r, c);
        if (!v.is_zero()) out.at(l * m + r, l * m + c) = v;
      }
  return out;
}

namespace {

GQ ip(const std::vector<GQ>& x, const std::vector<GQ>& y) {
  GQ s;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i].conj();
  return s;
}

std::vector<GQ> axpy(const std::vector<GQ>& x, const GQ& a, const std::vector<GQ>& y) {
  std::vector<GQ> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - a * y[i];
  return out;
}

// Gram-Schmidt without normalization; returns orthogonal vectors and their
// (rational, positive) Gram values.
void orthogonalize(std::vector<std::vector<GQ>>& cols, std::vector<Rat>& gram) {
  std::vector<std::vector<GQ>> out;
  gram.clear();
  for (auto& v : cols) {
    std::vector<GQ> u = v;
    for (std::size_t j = 0; j < out.size(); ++j) {
      GQ c = ip(u, out[j]);
      c.re /= gram[j];
      c.im /= gram[j];
      u = axpy(u, c, out[j]);
    }
    GQ g = ip(u, u);
    if (g.im != 0) throw Error("orthogonalize: non-real Gram value");
    if (g.re == 0) throw Error("orthogonalize: dependent columns");
    out.push_back(std::move(u));
    gram.push_back(g.re);
  }
  cols = std::move(out);
}

ExactMatrix rank_one_sum(const std::vector<std::vector<GQ>>& cols, const std::vector<Rat>& gram,
                         std::size_t n) {
  ExactMatrix out(n, n);
  for (std::size_t i = 0; i < cols.size(); ++i)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        GQ v = cols[i][r] * cols[i][c].conj();
        v.re /= gram[i];
        v.im /= gram[i];
        out.at(r, c) += v;
      }
  return out;
}

}  // namespace

ExactMatrix MvnWitness::left() const {
  return rank_one_sum(u_cols, u_gram, u_cols.empty() ? 0 : u_cols[0].size());
}

ExactMatrix MvnWitness::right() const {
  return rank_one_sum(w_cols, w_gram, w_cols.empty() ? 0 : w_cols[0].size());
}

bool MvnWitness::verify(const ExactMatrix& p, const ExactMatrix& q) const {
  if (u_cols.size() != w_cols.size()) return false;
  if (u_cols.empty()) return p.is_zero() && q.is_zero();
  for (std::size_t i = 0; i < u_cols.size(); ++i)
    for (std::size_t j = i + 1; j < u_cols.size(); ++j)
      if (!ip(u_cols[i], u_cols[j]).is_zero() || !ip(w_cols[i], w_cols[j]).is_zero()) return false;
  for (std::size_t i = 0; i < u_cols.size(); ++i)
    if (s_squared[i] * u_gram[i] * w_gram[i] != 1) return false;
  return left() == p && right() == q;
}

std::optional<ExactMatrix> MvnWitness::as_matrix() const {
  if (u_cols.empty()) return ExactMatrix::zero(0, 0);
  std::size_t n = u_cols[0].size();
  ExactMatrix v(n, n);
  for (std::size_t i = 0; i < u_cols.size(); ++i) {
    Rat root;
    if (!exact::is_perfect_square(s_squared[i], &root)) return std::nullopt;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        v.at(r, c) += GQ(root) * u_cols[i][r] * w_cols[i][c].conj();
  }
  return v;
}

MvnFdResult mvn_decide_fd(const ExactProjection& p_in, const ExactProjection& q_in) {
  ExactMatrix p = p_in.matrix, q = q_in.matrix;
  std::size_t n = std::max(p.rows(), q.rows());
  if (p.rows() < n) p = p.embed(n, n, 0, 0);
  if (q.rows() < n) q = q.embed(n, n, 0, 0);

  std::vector<std::vector<GQ>> u = p.column_space_basis();
  std::vector<std::vector<GQ>> w = q.column_space_basis();
  if (u.size() != w.size()) return {};

  MvnFdResult out;
  out.equivalent = true;
  MvnWitness wit;
  wit.u_cols = std::move(u);
  wit.w_cols = std::move(w);
  orthogonalize(wit.u_cols, wit.u_gram);
  orthogonalize(wit.w_cols, wit.w_gram);
  for (std::size_t i = 0; i < wit.u_cols.size(); ++i) {
    Rat s = Rat(1) / (wit.u_gram[i] * wit.w_gram[i]);
    wit.s_squared.push_back(s);
  }
  if (!wit.verify(p, q)) throw Error("mvn_decide_fd: witness verification failed");
  out.witness = std::move(wit);
  return out;
}

std::pair<std::size_t, Rat> rank_trace(const ExactProjection& p) {
  std::size_t r = p.matrix.rank();
  GQ t = p.matrix.trace_sum();
  if (t.im != 0 || t.re != static_cast<long>(r))
    throw Error("rank_trace: trace does not match rank");
  Rat tr(static_cast<long>(r), static_cast<long>(p.matrix.rows()));
  tr.canonicalize();
  return {r, tr};
}

namespace {

// Simplest rational in the closed interval [lo, hi].
Rat simplest_in(const Rat& lo, const Rat& hi) {
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
  if (lo == Rat(fl)) return lo;
  if (hi >= Rat(fl) + 1) return Rat(fl) + 1;
  Rat inner = simplest_in(Rat(1) / (hi - Rat(fl)), Rat(1) / (lo - Rat(fl)));
  return Rat(fl) + Rat(1) / inner;
}

// Distinct real eigenvalues of a Hermitian matrix when all are rational.
std::optional<std::vector<Rat>> rational_spectrum(const ExactMatrix& h) {
  Poly p = exact::charpoly_real(h);
  Poly sf = exact::poly_squarefree_part(p);
  std::vector<Poly> chain = exact::sturm_chain(sf);
  // Cauchy root bound.
  Rat bound(1);
  for (std::size_t i = 0; i + 1 < sf.size(); ++i) {
    Rat v = sf[i] / sf.back();
    if (v < 0) v = -v;
    if (v + 1 > bound) bound = v + 1;
  }
  int total = exact::sturm_count_roots(chain, -bound, bound);
  std::vector<std::pair<Rat, Rat>> intervals{{-bound, bound}};
  std::vector<Rat> roots;
  while (!intervals.empty()) {
    auto [a, b] = intervals.back();
    intervals.pop_back();
    int cnt = exact::sturm_count_roots(chain, a, b);
    if (cnt == 0) continue;
    if (cnt == 1 && b - a < pow2(-64)) {
      Rat cand = simplest_in(a, b);
      if (exact::poly_eval(sf, cand) != 0) return std::nullopt;
      roots.push_back(cand);
      continue;
    }
    Rat mid = (a + b) / 2;
    if (exact::poly_eval(sf, mid) == 0 && cnt == 1) {
      roots.push_back(mid);
      continue;
    }
    intervals.emplace_back(a, mid);
    intervals.emplace_back(mid, b);
  }
  if (static_cast<int>(roots.size()) != total) return std::nullopt;
  return roots;
}

}  // namespace

RoundedProjection spectral_round_to_projection(const ExactMatrix& m) {
  if (!m.square()) throw DimensionError("spectral_round_to_projection: non-square input");
  Rat residual(0);
  {
    bool decided = false;
    for (long k = 8; k <= 24 && !decided; k += 8) {
      Ival r1 = certified_opnorm(m * m - m, k);
      Ival r2 = certified_opnorm(m - m.adjoint(), k);
      Rat hi = r1.hi > r2.hi ? r1.hi : r2.hi;
      Rat lo = r1.lo > r2.lo ? r1.lo : r2.lo;
      if (hi < Rat(1, 4)) {
        residual = hi;
        decided = true;
      } else if (lo >= Rat(1, 4)) {
        throw OutOfBasinError("spectral rounding requires residual < 1/4");
      }
    }
    if (!decided) throw OutOfBasinError("spectral rounding residual too close to 1/4");
  }

  ExactMatrix h = (m + m.adjoint()).scale(GQ(Rat(1, 2)));
  RoundedProjection out;
  out.residual_ub = residual;

  if (auto spectrum = rational_spectrum(h)) {
    // Lagrange interpolation of the indicator of (1/2, infinity).
    ExactMatrix p = ExactMatrix::zero(h.rows(), h.cols());
    for (const Rat& lam : *spectrum) {
      if (lam <= Rat(1, 2)) continue;
      ExactMatrix term = ExactMatrix::identity(h.rows());
      for (const Rat& mu : *spectrum) {
        if (mu == lam) continue;
        Rat scale = Rat(1) / (lam - mu);
        term = term * (h - ExactMatrix::scalar(h.rows(), GQ(mu))).scale(GQ(scale));
      }
      p = p + term;
    }
    if (!is_exact_projection(p)) throw Error("spectral rounding produced a non-projection");
    out.exact = p;
    ExactMatrix copy = p;
    out.approx = [copy](long) { return copy; };
    return out;
  }

  // Cubic projector iteration X <- 3X^2 - 2X^3: the eigenbasis is fixed and
  // eigenvalues converge quadratically to {0, 1}.
  auto state = std::make_shared<std::pair<std::mutex, ExactMatrix>>();
  state->second = h;
  out.approx = [state](long k) {
    std::scoped_lock lock(state->first);
    ExactMatrix& x = state->second;
    while (true) {
      Ival res = certified_opnorm(x * x - x, k + 3);
      if (res.hi <= pow2(-k - 1)) return x;
      ExactMatrix x2 = x * x;
      x = x2.scale(GQ::integer(3)) - (x2 * x).scale(GQ::integer(2));
    }
  };
  return out;
}

}  // namespace ekt::fd
