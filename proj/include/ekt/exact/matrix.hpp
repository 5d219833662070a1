#pragma once

#include <cstddef>
#include <vector>

#include "ekt/exact/gaussian.hpp"

namespace ekt::exact {

// Dense matrix over Q(i), row-major.
class ExactMatrix {
 public:
  ExactMatrix() : rows_(0), cols_(0) {}
  ExactMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols) {}

  static ExactMatrix identity(std::size_t n);
  static ExactMatrix zero(std::size_t rows, std::size_t cols) { return ExactMatrix(rows, cols); }
  // Matrix unit E_{r,s} (1-based indices) in M_{n}.
  static ExactMatrix unit(std::size_t n, std::size_t r, std::size_t s);
  static ExactMatrix diag(const std::vector<GQ>& d);
  static ExactMatrix scalar(std::size_t n, const GQ& c);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  GQ& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
  const GQ& at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

  ExactMatrix adjoint() const;
  ExactMatrix transpose() const;
  ExactMatrix scale(const GQ& c) const;
  bool is_zero() const;
  bool is_hermitian() const;
  bool is_diagonal() const;

  friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator-(const ExactMatrix& a);
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);

  // Sum of diagonal entries (square only).
  GQ trace_sum() const;

  // Copies *this into a (rows x cols) zero matrix at offset (ro, co).
  ExactMatrix embed(std::size_t rows, std::size_t cols, std::size_t ro, std::size_t co) const;
  // Block diagonal [this, 0; 0, b].
  ExactMatrix dir_sum(const ExactMatrix& b) const;
  ExactMatrix submatrix(const std::vector<std::size_t>& rows,
                        const std::vector<std::size_t>& cols) const;

  // Exact rank via Gaussian elimination.
  std::size_t rank() const;
  // Column-space basis: columns of *this forming a basis of the range.
  std::vector<std::vector<GQ>> column_space_basis() const;

  Rat frobenius_sq() const;       // sum of |entry|^2
  Rat max_entry_norm_sq() const;  // max |entry|^2

 private:
  std::size_t rows_, cols_;
  std::vector<GQ> e_;
};

// Characteristic polynomial of a square matrix via the Faddeev-LeVerrier
// recursion; returns coefficients c[0..n] with p(x) = sum c[k] x^k, c[n] = 1.
// Requires all coefficients real (holds for Hermitian input).
std::vector<Rat> charpoly_real(const ExactMatrix& m);

}  // namespace ekt::exact
