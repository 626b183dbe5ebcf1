#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "surgery/bigint.hpp"

namespace surgery {

/// Dense exact-integer matrix, row major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);
  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(const std::vector<BigInt>& entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, const BigInt& k);
  void add_col(std::size_t dst, std::size_t src, const BigInt& k);
  void negate_row(std::size_t r);

  IntMatrix operator*(const IntMatrix& o) const;
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
BigInt determinant(const IntMatrix& m);

struct SmithForm {
  IntMatrix U, D, V;
};

/// U * m * V = D with U, V unimodular and D diagonal, non-negative, each
/// diagonal entry dividing the next. The pivot at every stage is the entry of
/// least absolute value, ties broken by row then column. The postconditions
/// are checked before returning.
SmithForm smith_normal_form(const IntMatrix& m);

struct AbelianGroupDecomp {
  std::size_t free_rank = 0;
  /// d1 | d2 | ... with every di >= 2.
  std::vector<BigInt> torsion;

  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  /// "0", "Z", "Z/5", "Z^2 + Z/2 + Z/12".
  std::string to_string() const;
  friend bool operator==(const AbelianGroupDecomp&, const AbelianGroupDecomp&) = default;
};

/// Z^cols modulo the row space of m.
AbelianGroupDecomp cokernel(const IntMatrix& m);
/// Direct sum, brought back to a divisibility chain.
AbelianGroupDecomp direct_sum(const AbelianGroupDecomp& a, const AbelianGroupDecomp& b);

}  // namespace surgery
