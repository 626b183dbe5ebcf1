#include "surgery/snf.hpp"

#include <boost/multiprecision/integer.hpp>
#include <utility>

#include "surgery/error.hpp"

namespace surgery {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error("ragged matrix literal");
    for (long long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<BigInt>& entries) {
  IntMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row(std::size_t dst, std::size_t src, const BigInt& k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += k * (*this)(src, c);
}

void IntMatrix::add_col(std::size_t dst, std::size_t src, const BigInt& k) {
  if (k == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += k * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw Error("matrix shape mismatch");
  IntMatrix out(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const BigInt& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
    }
  return out;
}

std::string IntMatrix::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) s += ",";
    s += "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) s += ",";
      s += (*this)(i, j).str();
    }
    s += "]";
  }
  return s + "]";
}

BigInt determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error("determinant of a non-square matrix");
  std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && a(r, k) == 0) ++r;
      if (r == n) return 0;
      a.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t R = m.rows(), C = m.cols();
  IntMatrix D = m, U = IntMatrix::identity(R), V = IntMatrix::identity(C);
  for (std::size_t t = 0; t < std::min(R, C); ++t) {
    while (true) {
      // Least nonzero entry of the trailing block.
      bool found = false;
      std::size_t pr = 0, pc = 0;
      BigInt best;
      for (std::size_t i = t; i < R; ++i)
        for (std::size_t j = t; j < C; ++j) {
          if (D(i, j) == 0) continue;
          BigInt v = abs(D(i, j));
          if (!found || v < best) {
            found = true;
            best = v;
            pr = i;
            pc = j;
          }
        }
      if (!found) goto done;
      D.swap_rows(t, pr);
      U.swap_rows(t, pr);
      D.swap_cols(t, pc);
      V.swap_cols(t, pc);
      bool clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (D(i, t) == 0) continue;
        BigInt q = D(i, t) / D(t, t);
        D.add_row(i, t, -q);
        U.add_row(i, t, -q);
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (D(t, j) == 0) continue;
        BigInt q = D(t, j) / D(t, t);
        D.add_col(j, t, -q);
        V.add_col(j, t, -q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < R && divides; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (D(i, j) % D(t, t) != 0) {
            D.add_row(t, i, 1);
            U.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      U.negate_row(t);
    }
  }
done:
  // Postconditions.
  if (U * m * V != D) throw Error("internal: Smith form does not satisfy U m V = D");
  if (abs(determinant(U)) != 1 || abs(determinant(V)) != 1)
    throw Error("internal: Smith form transforms are not unimodular");
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j)
      if (i != j && D(i, j) != 0) throw Error("internal: Smith form is not diagonal");
  std::size_t k = std::min(R, C);
  for (std::size_t i = 0; i < k; ++i) {
    if (D(i, i) < 0) throw Error("internal: negative Smith invariant");
    if (i + 1 < k) {
      if (D(i, i) == 0 ? D(i + 1, i + 1) != 0 : D(i + 1, i + 1) % D(i, i) != 0)
        throw Error("internal: Smith divisibility chain broken");
    }
  }
  return {std::move(U), std::move(D), std::move(V)};
}

std::string AbelianGroupDecomp::to_string() const {
  if (trivial()) return "0";
  std::string s;
  if (free_rank > 0) s = free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank);
  for (const auto& d : torsion) {
    if (!s.empty()) s += " + ";
    s += "Z/" + d.str();
  }
  return s;
}

AbelianGroupDecomp cokernel(const IntMatrix& m) {
  AbelianGroupDecomp g;
  auto snf = smith_normal_form(m);
  std::size_t k = std::min(m.rows(), m.cols());
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const BigInt& d = snf.D(i, i);
    if (d == 0) continue;
    ++nonzero;
    if (d > 1) g.torsion.push_back(d);
  }
  g.free_rank = m.cols() - nonzero;
  return g;
}

AbelianGroupDecomp direct_sum(const AbelianGroupDecomp& a, const AbelianGroupDecomp& b) {
  std::vector<BigInt> diag = a.torsion;
  diag.insert(diag.end(), b.torsion.begin(), b.torsion.end());
  AbelianGroupDecomp g = cokernel(IntMatrix::diagonal(diag));
  g.free_rank += a.free_rank + b.free_rank;
  return g;
}

}  // namespace surgery
