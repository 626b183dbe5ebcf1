#include "surgery/manifold.hpp"

#include <algorithm>
#include <numeric>

#include "surgery/error.hpp"

namespace surgery {

PrimeToken PrimeToken::lens(int p, int q) {
  if (p < 2) throw Error("lens space L(p,q) needs p >= 2, got p = " + std::to_string(p));
  long long qm = ((static_cast<long long>(q) % p) + p) % p;
  if (std::gcd(static_cast<long long>(p), qm) != 1)
    throw Error("lens space L(" + std::to_string(p) + "," + std::to_string(q) + ") needs gcd(p,q) = 1");
  long long inv = 1;
  while ((inv * qm) % p != 1) ++inv;
  long long best = std::min({qm, p - qm, inv, p - inv});
  if (p == 2) best = 1;
  PrimeToken t = of(Kind::Lens);
  t.p = p;
  t.q = static_cast<int>(best);
  return t;
}

PrimeToken PrimeToken::surgered(std::string label, AbelianGroupDecomp h1) {
  PrimeToken t = of(Kind::Surgered);
  t.label = std::move(label);
  t.h1 = std::move(h1);
  return t;
}

AbelianGroupDecomp PrimeToken::homology() const {
  switch (kind) {
    case Kind::S3:
    case Kind::Poincare: return {};
    case Kind::S1xS2: return {1, {}};
    case Kind::Lens: return {0, {BigInt(p)}};
    case Kind::Surgered: return h1;
  }
  return {};
}

std::string PrimeToken::to_string() const {
  switch (kind) {
    case Kind::S3: return "S3";
    case Kind::S1xS2: return "S1xS2";
    case Kind::Lens: return "L(" + std::to_string(p) + "," + std::to_string(q) + ")";
    case Kind::Poincare: return "Poincare";
    case Kind::Surgered: return "Surgered(" + label + ")";
  }
  return "?";
}

ManifoldExpr::ManifoldExpr(std::vector<std::vector<PrimeToken>> components)
    : components_(std::move(components)) {
  normalize();
}

ManifoldExpr ManifoldExpr::single(PrimeToken t) { return ManifoldExpr({{std::move(t)}}); }

void ManifoldExpr::normalize() {
  for (auto& c : components_) {
    std::erase_if(c, [](const PrimeToken& t) { return t.kind == PrimeToken::Kind::S3; });
    std::sort(c.begin(), c.end());
  }
  std::sort(components_.begin(), components_.end());
}

std::string ManifoldExpr::to_string() const {
  if (components_.empty()) return "empty";
  std::string out;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) out += " + ";
    const auto& c = components_[i];
    if (c.empty()) out += "S3";
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k) out += " # ";
      out += c[k].to_string();
    }
  }
  return out;
}

namespace {

void check_index(const ManifoldExpr& e, std::size_t i) {
  if (i >= e.component_count())
    throw Error("component index " + std::to_string(i) + " out of range (" +
                std::to_string(e.component_count()) + " components)");
}

}  // namespace

ManifoldExpr disjoint_union(const ManifoldExpr& a, const ManifoldExpr& b) {
  auto comps = a.components();
  comps.insert(comps.end(), b.components().begin(), b.components().end());
  return ManifoldExpr(std::move(comps));
}

ManifoldExpr zero_surgery_expr(const ManifoldExpr& e, std::size_t first, std::size_t second) {
  check_index(e, first);
  check_index(e, second);
  auto comps = e.components();
  if (first == second) {
    comps[first].push_back(PrimeToken::s1xs2());
    return ManifoldExpr(std::move(comps));
  }
  auto lo = std::min(first, second), hi = std::max(first, second);
  comps[lo].insert(comps[lo].end(), comps[hi].begin(), comps[hi].end());
  comps.erase(comps.begin() + static_cast<std::ptrdiff_t>(hi));
  return ManifoldExpr(std::move(comps));
}

ManifoldExpr connected_sum(const ManifoldExpr& a, const ManifoldExpr& b) {
  if (a.component_count() == 0 || b.component_count() == 0)
    throw Error("connected sum needs a component on each side");
  auto comps = a.components();
  comps[0].insert(comps[0].end(), b.components()[0].begin(), b.components()[0].end());
  comps.insert(comps.end(), b.components().begin() + 1, b.components().end());
  return ManifoldExpr(std::move(comps));
}

ManifoldExpr two_surgery_expr(const ManifoldExpr& e, std::size_t component) {
  check_index(e, component);
  auto comps = e.components();
  auto& c = comps[component];
  auto it = std::find_if(c.begin(), c.end(),
                         [](const PrimeToken& t) { return t.kind == PrimeToken::Kind::S1xS2; });
  if (it == c.end())
    throw Error("component " + std::to_string(component) +
                " has no S1xS2 summand to remove by 2-surgery");
  c.erase(it);
  return ManifoldExpr(std::move(comps));
}

std::vector<AbelianGroupDecomp> h1_expr(const ManifoldExpr& e) {
  std::vector<AbelianGroupDecomp> out;
  for (const auto& c : e.components()) {
    AbelianGroupDecomp acc;
    for (const auto& t : c) acc = direct_sum(acc, t.homology());
    out.push_back(std::move(acc));
  }
  return out;
}

}  // namespace surgery
