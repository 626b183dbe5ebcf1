#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace surgery {

/// Word in a free group. Letter +(g+1) is generator g, -(g+1) its inverse.
using Word = std::vector<int>;

Word free_reduce(const Word& w);
/// Free reduction followed by cancelling matching ends.
Word cyclic_reduce(const Word& w);
Word inverse(const Word& w);
/// Exponent sum of generator g in w.
int exponent_sum(const Word& w, int generator);
/// Smallest rotation of w or of its inverse, used to compare relators.
Word canonical_relator(const Word& w);
/// "a b^-1 ..." with generators named a, b, ... (x27, x28, ... past z).
std::string word_to_string(const Word& w);

struct GroupPresentation {
  int generator_count = 0;
  std::vector<Word> relators;

  /// Throws unless every letter names a valid generator.
  void validate() const;
  std::size_t total_length() const;
  friend bool operator==(const GroupPresentation&, const GroupPresentation&) = default;
};

/// Isomorphic presentation with no more generators and no more total relator
/// length: free and cyclic reduction, removal of empty and duplicate
/// relators, and elimination of generators through relators of length one
/// or two. Each elimination costs one unit of `budget`.
GroupPresentation tietze_simplify(const GroupPresentation& p, std::size_t budget = 10000);

struct EnumerationResult {
  enum class Outcome { Finite, ExceededBound };
  Outcome outcome = Outcome::ExceededBound;
  /// Group order when finite.
  std::size_t order = 0;
  /// Cosets defined during the run, including ones later found coincident.
  std::size_t cosets_used = 0;
  /// Finite only: row per coset, columns g0, g0^-1, g1, g1^-1, ...
  std::vector<std::vector<std::size_t>> table;

  bool finite() const noexcept { return outcome == Outcome::Finite; }
};

inline constexpr std::size_t kDefaultMaxCosets = 100000;

/// Coset enumeration over the trivial subgroup, relator-driven (HLT) with
/// deterministic definition order. Exceeding `max_cosets` definitions yields
/// ExceededBound.
EnumerationResult todd_coxeter(const GroupPresentation& p,
                               std::size_t max_cosets = kDefaultMaxCosets);

}  // namespace surgery
