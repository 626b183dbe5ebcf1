#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "surgery/laurent.hpp"

namespace surgery {

/// Edge labels of one crossing, counterclockwise starting at the incoming
/// under-strand: slot 0 enters under, slot 2 leaves under, slots 1 and 3
/// carry the over-strand.
using Crossing = std::array<int, 4>;

/// A crossing slot: which crossing, which of the four positions.
struct Endpoint {
  std::size_t crossing = 0;
  int slot = 0;
  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

/// Oriented link diagram in planar-diagram form.
///
/// Every edge label appears exactly twice among the crossings. The orientation
/// of a strand follows from the under-strand convention and is propagated
/// through over-passes. A component that never passes under anything carries
/// no orientation in the tuples; it is oriented so that its smallest edge
/// label leaves the first crossing slot (in canonical order) where it occurs.
///
/// Crossings are stored sorted, so two diagrams built from the same tuples in
/// any order compare equal. Components are numbered by their smallest edge
/// label; free loops come after all strand components.
class LinkDiagram {
 public:
  LinkDiagram() = default;
  LinkDiagram(std::vector<Crossing> crossings, int free_loops);

  const std::vector<Crossing>& crossings() const noexcept { return crossings_; }
  int free_loops() const noexcept { return free_loops_; }
  std::size_t crossing_count() const noexcept { return crossings_.size(); }

  /// Closed strand cycles plus free loops.
  std::size_t component_count() const noexcept {
    return strands_.size() + static_cast<std::size_t>(free_loops_);
  }
  std::size_t strand_count() const noexcept { return strands_.size(); }
  bool is_free_loop(std::size_t component) const noexcept {
    return component >= strands_.size();
  }

  /// Edge labels of a strand component in traversal order, starting at its
  /// smallest label. Empty for free loops.
  std::span<const int> strand_edges(std::size_t component) const;

  /// Sorted list of all edge labels.
  const std::vector<int>& edge_labels() const noexcept { return labels_; }
  bool has_edge(int label) const;
  int max_label() const noexcept { return labels_.empty() ? 0 : labels_.back(); }
  std::size_t component_of_edge(int label) const;

  /// Where the edge enters a crossing, and where it leaves one.
  Endpoint head(int label) const;
  Endpoint tail(int label) const;

  /// +1 or -1 for the crossing at the given index.
  int sign(std::size_t crossing) const { return signs_.at(crossing); }
  /// True when the over-strand runs from slot 1 to slot 3.
  bool over_runs_forward(std::size_t crossing) const { return signs_.at(crossing) < 0; }
  /// Component of the under- and over-strand at a crossing.
  std::size_t under_component(std::size_t crossing) const;
  std::size_t over_component(std::size_t crossing) const;

  friend bool operator==(const LinkDiagram& a, const LinkDiagram& b) {
    return a.crossings_ == b.crossings_ && a.free_loops_ == b.free_loops_;
  }

 private:
  std::size_t label_index(int label) const;

  std::vector<Crossing> crossings_;
  int free_loops_ = 0;
  std::vector<int> labels_;
  // Per label index: the two endpoints, head first.
  std::vector<std::array<Endpoint, 2>> ends_;
  std::vector<std::size_t> component_of_;
  std::vector<std::vector<int>> strands_;
  std::vector<int> signs_;
};

/// Parses whitespace-separated `X(a,b,c,d)` and `O` tokens; `#` starts a
/// comment running to end of line.
LinkDiagram parse_pd(std::string_view text);

/// Canonical text: crossings in sorted order, then one `O` per free loop.
std::string to_pd(const LinkDiagram& d);

std::size_t component_count(const LinkDiagram& d);
int writhe(const LinkDiagram& d);
/// Sum of signs over crossings where the component crosses itself.
int self_writhe(const LinkDiagram& d, std::size_t component);
/// Half the signed count of crossings between two distinct components.
int linking_number(const LinkDiagram& d, std::size_t i, std::size_t j);

inline constexpr std::size_t kMaxBracketCrossings = 20;

/// Raw state-sum Kauffman bracket: one loop evaluates to 1 and every further
/// loop contributes a factor (-A^2 - A^-2). The A-smoothing of X(a,b,c,d)
/// joins a with b and c with d.
LaurentPoly kauffman_bracket(const LinkDiagram& d);
/// Writhe-normalised bracket (-A^3)^(-w) <D>.
LaurentPoly normalized_bracket(const LinkDiagram& d);

/// Exchanges over- and under-strands at every crossing.
LinkDiagram mirror(const LinkDiagram& d);
/// Split union; the second diagram's labels are shifted past the first's.
LinkDiagram disjoint_union(const LinkDiagram& a, const LinkDiagram& b);
/// Renames edges to 1..2n preserving their order. Components keep their
/// relative numbering.
LinkDiagram compact_labels(const LinkDiagram& d);

/// Closure of a braid on `strands` strands. Letter +i is the positive
/// generator exchanging strands i and i+1 (1-based), -i its inverse. Strands
/// that never cross become free loops.
LinkDiagram braid_closure(int strands, std::span<const int> word);

}  // namespace surgery
