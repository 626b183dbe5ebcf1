#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace surgery {

/// Laurent polynomial in one variable A with exact integer coefficients.
/// Zero coefficients are never stored.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  static LaurentPoly constant(std::int64_t c);
  static LaurentPoly monomial(int exponent, std::int64_t coeff = 1);

  std::int64_t coefficient(int exponent) const;
  const std::map<int, std::int64_t>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  LaurentPoly operator*(const LaurentPoly& other) const;
  LaurentPoly operator+(const LaurentPoly& other) const;
  LaurentPoly operator-(const LaurentPoly& other) const;
  LaurentPoly scaled(std::int64_t c) const;
  /// Substitutes A -> A^-1.
  LaurentPoly inverted() const;

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  /// Ascending exponents, e.g. "-A^-4 - A^4"; the zero polynomial is "0".
  std::string to_string() const;

 private:
  void add_term(int exponent, std::int64_t coeff);
  std::map<int, std::int64_t> terms_;
};

}  // namespace surgery
