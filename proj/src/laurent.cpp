#include "surgery/laurent.hpp"

#include "surgery/error.hpp"

namespace surgery {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("Laurent coefficient overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("Laurent coefficient overflow");
  return r;
}

}  // namespace

LaurentPoly LaurentPoly::constant(std::int64_t c) { return monomial(0, c); }

LaurentPoly LaurentPoly::monomial(int exponent, std::int64_t coeff) {
  LaurentPoly p;
  p.add_term(exponent, coeff);
  return p;
}

std::int64_t LaurentPoly::coefficient(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? 0 : it->second;
}

void LaurentPoly::add_term(int exponent, std::int64_t coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.emplace(exponent, coeff);
  if (!inserted) {
    it->second = checked_add(it->second, coeff);
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  for (auto [e, c] : other.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
  for (auto [e, c] : other.terms_) add_term(e, checked_mul(c, -1));
  return *this;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& other) const {
  LaurentPoly r = *this;
  r += other;
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& other) const {
  LaurentPoly r = *this;
  r -= other;
  return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& other) const {
  LaurentPoly r;
  for (auto [e1, c1] : terms_)
    for (auto [e2, c2] : other.terms_) r.add_term(e1 + e2, checked_mul(c1, c2));
  return r;
}

LaurentPoly LaurentPoly::scaled(std::int64_t c) const {
  LaurentPoly r;
  for (auto [e, k] : terms_) r.add_term(e, checked_mul(k, c));
  return r;
}

LaurentPoly LaurentPoly::inverted() const {
  LaurentPoly r;
  for (auto [e, c] : terms_) r.add_term(-e, c);
  return r;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto [e, c] : terms_) {
    std::int64_t mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    if (e == 0) {
      out += std::to_string(mag);
      continue;
    }
    if (mag != 1) out += std::to_string(mag);
    out += "A";
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

}  // namespace surgery
