#include "ekt/exact/matrix.hpp"

#include "ekt/error.hpp"

namespace ekt::exact {

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = GQ::integer(1);
  return m;
}

ExactMatrix ExactMatrix::unit(std::size_t n, std::size_t r, std::size_t s) {
  if (r < 1 || r > n || s < 1 || s > n) throw DimensionError("matrix unit index out of range");
  ExactMatrix m(n, n);
  m.at(r - 1, s - 1) = GQ::integer(1);
  return m;
}

ExactMatrix ExactMatrix::diag(const std::vector<GQ>& d) {
  ExactMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
  return m;
}

ExactMatrix ExactMatrix::scalar(std::size_t n, const GQ& c) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = c;
  return m;
}

ExactMatrix ExactMatrix::adjoint() const {
  ExactMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m.at(c, r) = at(r, c).conj();
  return m;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m.at(c, r) = at(r, c);
  return m;
}

ExactMatrix ExactMatrix::scale(const GQ& c) const {
  ExactMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] * c;
  return m;
}

bool ExactMatrix::is_zero() const {
  for (const auto& x : e_)
    if (!x.is_zero()) return false;
  return true;
}

bool ExactMatrix::is_hermitian() const {
  if (!square()) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r; c < cols_; ++c)
      if (at(r, c) != at(c, r).conj()) return false;
  return true;
}

bool ExactMatrix::is_diagonal() const {
  if (!square()) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (r != c && !at(r, c).is_zero()) return false;
  return true;
}

ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix add: shape mismatch");
  ExactMatrix m(a.rows_, a.cols_);
  for (std::size_t i = 0; i < m.e_.size(); ++i) m.e_[i] = a.e_[i] + b.e_[i];
  return m;
}

ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix sub: shape mismatch");
  ExactMatrix m(a.rows_, a.cols_);
  for (std::size_t i = 0; i < m.e_.size(); ++i) m.e_[i] = a.e_[i] - b.e_[i];
  return m;
}

ExactMatrix operator-(const ExactMatrix& a) {
  ExactMatrix m(a.rows_, a.cols_);
  for (std::size_t i = 0; i < m.e_.size(); ++i) m.e_[i] = -a.e_[i];
  return m;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("matrix mul: shape mismatch");
  ExactMatrix m(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const GQ& ark = a.at(r, k);
      if (ark.is_zero()) continue;
      for (std::size_t c = 0; c < b.cols_; ++c) {
        const GQ& bkc = b.at(k, c);
        if (bkc.is_zero()) continue;
        m.at(r, c) += ark * bkc;
      }
    }
  return m;
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
}

GQ ExactMatrix::trace_sum() const {
  if (!square()) throw DimensionError("trace of non-square matrix");
  GQ t;
  for (std::size_t i = 0; i < rows_; ++i) t += at(i, i);
  return t;
}

ExactMatrix ExactMatrix::embed(std::size_t rows, std::size_t cols, std::size_t ro,
                               std::size_t co) const {
  if (ro + rows_ > rows || co + cols_ > cols) throw DimensionError("embed: target too small");
  ExactMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m.at(ro + r, co + c) = at(r, c);
  return m;
}

ExactMatrix ExactMatrix::dir_sum(const ExactMatrix& b) const {
  ExactMatrix m(rows_ + b.rows_, cols_ + b.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m.at(r, c) = at(r, c);
  for (std::size_t r = 0; r < b.rows_; ++r)
    for (std::size_t c = 0; c < b.cols_; ++c) m.at(rows_ + r, cols_ + c) = b.at(r, c);
  return m;
}

ExactMatrix ExactMatrix::submatrix(const std::vector<std::size_t>& rows,
                                   const std::vector<std::size_t>& cols) const {
  ExactMatrix m(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) m.at(r, c) = at(rows[r], cols[c]);
  return m;
}

namespace {

// Reduce a copy to row echelon form; returns pivot column indices.
std::vector<std::size_t> echelon_pivots(ExactMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
    std::size_t sel = lead;
    while (sel < m.rows() && m.at(sel, c).is_zero()) ++sel;
    if (sel == m.rows()) continue;
    for (std::size_t cc = 0; cc < m.cols(); ++cc) std::swap(m.at(sel, cc), m.at(lead, cc));
    GQ inv_den = m.at(lead, c);
    for (std::size_t r = lead + 1; r < m.rows(); ++r) {
      if (m.at(r, c).is_zero()) continue;
      // r <- r - (m[r,c]/m[lead,c]) * lead
      Rat d = inv_den.norm_sq();
      GQ factor = m.at(r, c) * inv_den.conj();
      factor.re /= d;
      factor.im /= d;
      for (std::size_t cc = c; cc < m.cols(); ++cc)
        m.at(r, cc) = m.at(r, cc) - factor * m.at(lead, cc);
    }
    pivots.push_back(c);
    ++lead;
  }
  return pivots;
}

}  // namespace

std::size_t ExactMatrix::rank() const { return echelon_pivots(*this).size(); }

std::vector<std::vector<GQ>> ExactMatrix::column_space_basis() const {
  std::vector<std::vector<GQ>> basis;
  for (std::size_t c : echelon_pivots(*this)) {
    std::vector<GQ> col(rows_);
    for (std::size_t r = 0; r < rows_; ++r) col[r] = at(r, c);
    basis.push_back(std::move(col));
  }
  return basis;
}

Rat ExactMatrix::frobenius_sq() const {
  Rat s(0);
  for (const auto& x : e_) s += x.norm_sq();
  return s;
}

Rat ExactMatrix::max_entry_norm_sq() const {
  Rat s(0);
  for (const auto& x : e_) {
    Rat n = x.norm_sq();
    if (n > s) s = n;
  }
  return s;
}

std::vector<Rat> charpoly_real(const ExactMatrix& m) {
  if (!m.square()) throw DimensionError("charpoly of non-square matrix");
  const std::size_t n = m.rows();
  std::vector<GQ> coeff(n + 1);
  coeff[n] = GQ::integer(1);
  ExactMatrix mk = m;
  for (std::size_t k = 1; k <= n; ++k) {
    if (k > 1) {
      ExactMatrix shifted = mk;
      for (std::size_t i = 0; i < n; ++i) shifted.at(i, i) += coeff[n - k + 1];
      mk = m * shifted;
    }
    GQ t = mk.trace_sum();
    coeff[n - k] = GQ(-t.re / static_cast<long>(k), -t.im / static_cast<long>(k));
  }
  std::vector<Rat> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    if (coeff[i].im != 0) throw Error("charpoly_real: non-real coefficient");
    out[i] = coeff[i].re;
  }
  return out;
}

}  // namespace ekt::exact
