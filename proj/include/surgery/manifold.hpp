#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <tuple>
#include <vector>

#include "surgery/snf.hpp"

namespace surgery {

/// Prime summand of a closed orientable 3-manifold, as a formal token.
struct PrimeToken {
  // Declaration order is the summand sort order.
  enum class Kind { S3, Lens, Poincare, Surgered, S1xS2 };
  Kind kind = Kind::S3;
  /// Lens parameters, canonical q.
  int p = 0, q = 0;
  /// Surgered only: description of the framed link and its H1.
  std::string label;
  AbelianGroupDecomp h1;

  static PrimeToken s3() { return {}; }
  static PrimeToken s1xs2() { return of(Kind::S1xS2); }
  static PrimeToken poincare() { return of(Kind::Poincare); }
  /// Requires p >= 2 and gcd(p, q) = 1; q is replaced by the least of
  /// +-q^(+-1) mod p.
  static PrimeToken lens(int p, int q);
  static PrimeToken surgered(std::string label, AbelianGroupDecomp h1);

  AbelianGroupDecomp homology() const;
  std::string to_string() const;
  friend auto operator<=>(const PrimeToken& a, const PrimeToken& b) {
    return a.key() <=> b.key();
  }
  friend bool operator==(const PrimeToken& a, const PrimeToken& b) { return a.key() == b.key(); }

 private:
  static PrimeToken of(Kind k) {
    PrimeToken t;
    t.kind = k;
    return t;
  }
  std::tuple<int, int, int, std::string, std::string> key() const {
    return {static_cast<int>(kind), p, q, label, h1.to_string()};
  }
};

/// Disjoint union of connected sums of prime tokens. An empty sum is S3.
class ManifoldExpr {
 public:
  ManifoldExpr() = default;
  explicit ManifoldExpr(std::vector<std::vector<PrimeToken>> components);
  static ManifoldExpr single(PrimeToken t);

  /// Canonical: no S3 summands, summands sorted, components sorted.
  const std::vector<std::vector<PrimeToken>>& components() const noexcept { return components_; }
  std::size_t component_count() const noexcept { return components_.size(); }
  /// "S3", "L(5,1) # S1xS2", components joined by " + ".
  std::string to_string() const;

  friend bool operator==(const ManifoldExpr&, const ManifoldExpr&) = default;

 private:
  void normalize();
  std::vector<std::vector<PrimeToken>> components_;
};

ManifoldExpr disjoint_union(const ManifoldExpr& a, const ManifoldExpr& b);
/// 0-surgery on a pair of points. Distinct components merge into their
/// connected sum; two points of one component add an S1xS2 summand.
ManifoldExpr zero_surgery_expr(const ManifoldExpr& e, std::size_t first, std::size_t second);
/// Connected sum of the first components of `a` and `b`.
ManifoldExpr connected_sum(const ManifoldExpr& a, const ManifoldExpr& b);
/// Dual 2-surgery: deletes one S1xS2 summand from the component.
ManifoldExpr two_surgery_expr(const ManifoldExpr& e, std::size_t component);
/// H1 of every component, in component order.
std::vector<AbelianGroupDecomp> h1_expr(const ManifoldExpr& e);

}  // namespace surgery
