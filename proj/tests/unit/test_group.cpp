#include <random>

#include "doctest.h"
#include "perm_oracle.hpp"
#include "surgery/error.hpp"
#include "surgery/group.hpp"

using namespace surgery;

namespace {

GroupPresentation pres(int gens, std::vector<Word> rels) { return {gens, std::move(rels)}; }

Word pow(int g, int n) { return Word(static_cast<std::size_t>(std::abs(n)), n > 0 ? g : -g); }

Word cat(std::initializer_list<Word> parts) {
  Word w;
  for (const auto& p : parts) w.insert(w.end(), p.begin(), p.end());
  return w;
}

// Rows of a finite coset table act as a regular permutation representation:
// every relator fixes every coset and the generated group has `order`
// elements.
void check_regular(const GroupPresentation& p, const EnumerationResult& r) {
  REQUIRE(r.finite());
  REQUIRE(r.table.size() == r.order);
  std::vector<oracle::Perm> imgs;
  for (int g = 0; g < p.generator_count; ++g) {
    oracle::Perm perm(r.order);
    for (std::size_t c = 0; c < r.order; ++c) perm[c] = static_cast<int>(r.table[c][2 * static_cast<std::size_t>(g)]);
    CHECK(std::set<int>(perm.begin(), perm.end()).size() == r.order);
    for (std::size_t c = 0; c < r.order; ++c)
      CHECK(r.table[static_cast<std::size_t>(perm[c])][2 * static_cast<std::size_t>(g) + 1] == c);
    imgs.push_back(perm);
  }
  for (const auto& rel : p.relators) CHECK(oracle::evaluate(rel, imgs, r.order) == oracle::identity(r.order));
  CHECK(oracle::generated_order(imgs, r.order) == r.order);
}

}  // namespace

TEST_CASE("word reductions") {
  CHECK(free_reduce({1, -1, 2, 3, -3, -2, 1}) == Word{1});
  CHECK(cyclic_reduce({-2, 1, 1, 2}) == Word{1, 1});
  CHECK(cyclic_reduce({1, -1}).empty());
  CHECK(inverse({1, -2, 3}) == Word{-3, 2, -1});
  CHECK(exponent_sum({1, 2, 1, -1, 1}, 0) == 2);
  CHECK(canonical_relator({2, 1}) == canonical_relator({1, 2}));
  CHECK(canonical_relator({-1, -2}) == canonical_relator({2, 1}));
  CHECK(word_to_string({1, 1, -2, 3}) == "a^2 b^-1 c");
  CHECK(word_to_string({}) == "1");
  CHECK_THROWS_AS(pres(1, {{2}}).validate(), Error);
  CHECK_THROWS_AS(pres(1, {{0}}).validate(), Error);
}

TEST_CASE("tietze examples") {
  CHECK(tietze_simplify(pres(2, {{2}})) == pres(1, {}));
  CHECK(tietze_simplify(pres(2, {{1, 2, -1, -2}, {2}})) == pres(1, {}));
  // x = y through a length-two relator, then duplicates vanish.
  auto s = tietze_simplify(pres(2, {{1, -2}, {1, 1, 1}, {2, 2, 2}}));
  CHECK(s == pres(1, {{1, 1, 1}}));
  // Generators not mentioned stay free.
  CHECK(tietze_simplify(pres(3, {{2}})).generator_count == 2);
  // Zero budget only tidies.
  CHECK(tietze_simplify(pres(2, {{1, -1}, {2}}), 0) == pres(2, {{2}}));
}

TEST_CASE("tietze never grows and preserves finite orders") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    int gens = 1 + static_cast<int>(rng() % 3);
    GroupPresentation p{gens, {}};
    int nrel = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < nrel; ++k) {
      Word w;
      auto len = 1 + rng() % 5;
      for (std::size_t i = 0; i < len; ++i) {
        int g = 1 + static_cast<int>(rng() % static_cast<unsigned>(gens));
        w.push_back(rng() % 2 ? g : -g);
      }
      p.relators.push_back(w);
    }
    auto s = tietze_simplify(p);
    CHECK(s.generator_count <= p.generator_count);
    CHECK(s.total_length() <= p.total_length());
    CHECK_NOTHROW(s.validate());
    auto a = todd_coxeter(p, 2000);
    auto b = todd_coxeter(s, 2000);
    if (a.finite() && b.finite()) CHECK(a.order == b.order);
    CHECK(tietze_simplify(p) == s);
  }
}

TEST_CASE("todd_coxeter: cyclic groups 1..50") {
  for (int n = 1; n <= 50; ++n) {
    auto p = pres(1, {pow(1, n)});
    auto r = todd_coxeter(p);
    CHECK(r.finite());
    CHECK(r.order == static_cast<std::size_t>(n));
    check_regular(p, r);
  }
  CHECK(todd_coxeter(pres(0, {})).order == 1);
}

TEST_CASE("todd_coxeter: infinite groups exceed the bound") {
  auto r = todd_coxeter(pres(1, {}), 10000);
  CHECK(!r.finite());
  CHECK(r.cosets_used == 10000);
  CHECK(!todd_coxeter(pres(2, {{1, 2, -1, -2}}), 5000).finite());
  CHECK_THROWS_AS(todd_coxeter(pres(1, {}), 0), Error);
}

TEST_CASE("todd_coxeter: dihedral and symmetric families") {
  for (int n = 2; n <= 12; ++n) {
    auto d = pres(2, {pow(1, n), pow(2, 2), cat({{1, 2}, {1, 2}})});
    auto r = todd_coxeter(d);
    CHECK(r.order == static_cast<std::size_t>(2 * n));
    check_regular(d, r);
  }
  // S4 = <a, b | a^2, b^3, (ab)^4>.
  auto s4 = pres(2, {pow(1, 2), pow(2, 3), cat({{1, 2}, {1, 2}, {1, 2}, {1, 2}})});
  CHECK(todd_coxeter(s4).order == 24);
  // Quaternion group.
  auto q8 = pres(2, {pow(1, 4), cat({pow(1, 2), pow(2, -2)}), cat({{-2, 1, 2}, {1}})});
  CHECK(todd_coxeter(q8).order == 8);
}

TEST_CASE("todd_coxeter: (2,3,5) presentation is A5, cross-checked in S5") {
  Word ab5;
  for (int k = 0; k < 5; ++k) ab5.insert(ab5.end(), {1, 2});
  auto p = pres(2, {pow(1, 2), pow(2, 3), ab5});
  auto r = todd_coxeter(p);
  CHECK(r.finite());
  CHECK(r.order == 60);
  check_regular(p, r);
  // Independent lower bound: a homomorphism onto a subgroup of order 60 of S5.
  std::size_t best = 0;
  oracle::for_each_hom(p, oracle::all_perms(5), 5, [&](const std::vector<oracle::Perm>& imgs) {
    best = std::max(best, oracle::generated_order(imgs, 5));
  });
  CHECK(best == 60);
}

TEST_CASE("todd_coxeter: determinism and bound independence") {
  auto p = pres(2, {pow(1, 2), pow(2, 3), cat({{1, 2}, {1, 2}, {1, 2}})});  // A4
  CHECK(!todd_coxeter(pres(2, {pow(1, 3), pow(2, 3), cat({{1, 2}, {1, 2}, {1, 2}})}), 20000).finite());
  auto a = todd_coxeter(p, 1000);
  auto b = todd_coxeter(p, 100000);
  CHECK(a.order == 12);
  CHECK(a.table == b.table);
  CHECK(a.cosets_used == b.cosets_used);
  auto tight = todd_coxeter(p, a.cosets_used);
  CHECK(tight.finite());
  CHECK(!todd_coxeter(p, a.cosets_used - 1).finite());
}
