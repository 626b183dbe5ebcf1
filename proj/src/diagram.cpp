#include "surgery/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <numeric>
#include <optional>

#include "surgery/error.hpp"

namespace surgery {

namespace {

enum class End : unsigned char { Unknown, Head, Tail };

End opposite(End e) { return e == End::Head ? End::Tail : End::Head; }

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
  std::vector<std::size_t> parent;
};

}  // namespace

LinkDiagram::LinkDiagram(std::vector<Crossing> crossings, int free_loops)
    : crossings_(std::move(crossings)), free_loops_(free_loops) {
  if (free_loops_ < 0) throw Error("free loop count must be non-negative");
  std::sort(crossings_.begin(), crossings_.end());

  std::map<int, std::vector<Endpoint>> seen;
  for (std::size_t c = 0; c < crossings_.size(); ++c) {
    for (int s = 0; s < 4; ++s) {
      int label = crossings_[c][s];
      if (label <= 0) throw Error("edge labels must be positive, got " + std::to_string(label));
      seen[label].push_back({c, s});
    }
  }
  labels_.reserve(seen.size());
  std::vector<std::array<Endpoint, 2>> occurrences;
  for (auto& [label, where] : seen) {
    if (where.size() != 2)
      throw Error("edge " + std::to_string(label) + " occurs " + std::to_string(where.size()) +
                  " times; every edge must occur exactly twice");
    labels_.push_back(label);
    occurrences.push_back({where[0], where[1]});
  }

  // Orient every slot: under-strand slots are fixed by convention, over-strand
  // slots are inferred across edges and through over-passes.
  std::vector<std::array<End, 4>> state(crossings_.size(), {End::Unknown, End::Unknown,
                                                            End::Unknown, End::Unknown});
  std::deque<Endpoint> queue;
  auto assign = [&](Endpoint p, End value) {
    End& cur = state[p.crossing][p.slot];
    if (cur == End::Unknown) {
      cur = value;
      queue.push_back(p);
    } else if (cur != value) {
      throw Error("strand through edge " + std::to_string(crossings_[p.crossing][p.slot]) +
                  " does not close up with a consistent orientation");
    }
  };
  auto other_end = [&](Endpoint p) {
    const auto& occ = occurrences[label_index(crossings_[p.crossing][p.slot])];
    return occ[0] == p ? occ[1] : occ[0];
  };
  auto propagate = [&] {
    while (!queue.empty()) {
      Endpoint p = queue.front();
      queue.pop_front();
      End value = state[p.crossing][p.slot];
      assign(other_end(p), opposite(value));
      assign({p.crossing, p.slot ^ 2}, opposite(value));
    }
  };
  for (std::size_t c = 0; c < crossings_.size(); ++c) {
    assign({c, 0}, End::Head);
    assign({c, 2}, End::Tail);
  }
  propagate();

  // Components that are over-strands everywhere.
  for (;;) {
    std::optional<std::size_t> pick;
    for (std::size_t li = 0; li < labels_.size() && !pick; ++li) {
      Endpoint p = occurrences[li][0];
      if (state[p.crossing][p.slot] == End::Unknown) pick = li;
    }
    if (!pick) break;
    // Collect the undirected cycle through the smallest unknown label.
    std::size_t li = *pick;
    std::vector<std::size_t> cycle{li};
    Endpoint from = occurrences[li][0];
    Endpoint at = occurrences[li][1];
    for (;;) {
      Endpoint next{at.crossing, at.slot ^ 2};
      std::size_t lj = label_index(crossings_[next.crossing][next.slot]);
      if (lj == li && next == from) break;
      cycle.push_back(lj);
      const auto& occ = occurrences[lj];
      at = occ[0] == next ? occ[1] : occ[0];
      if (lj == li) break;
    }
    Endpoint tail_of_min = occurrences[li][0];
    if (cycle.size() >= 3) {
      // Follow label succession: leave the smallest label towards its
      // smaller neighbour. `cycle` walks from occurrence 0 towards
      // occurrence 1, so cycle[1] is the neighbour reached through the head
      // when occurrence 0 is the tail.
      int forward = labels_[cycle[1]];
      int backward = labels_[cycle.back()];
      if (backward < forward) tail_of_min = occurrences[li][1];
    }
    assign(tail_of_min, End::Tail);
    propagate();
  }

  ends_.resize(labels_.size());
  for (std::size_t li = 0; li < labels_.size(); ++li) {
    auto [a, b] = occurrences[li];
    bool a_head = state[a.crossing][a.slot] == End::Head;
    ends_[li] = a_head ? std::array<Endpoint, 2>{a, b} : std::array<Endpoint, 2>{b, a};
  }

  component_of_.assign(labels_.size(), static_cast<std::size_t>(-1));
  for (std::size_t li = 0; li < labels_.size(); ++li) {
    if (component_of_[li] != static_cast<std::size_t>(-1)) continue;
    std::size_t comp = strands_.size();
    strands_.emplace_back();
    std::size_t cur = li;
    do {
      component_of_[cur] = comp;
      strands_.back().push_back(labels_[cur]);
      Endpoint h = ends_[cur][0];
      cur = label_index(crossings_[h.crossing][h.slot ^ 2]);
    } while (cur != li);
  }

  signs_.resize(crossings_.size());
  for (std::size_t c = 0; c < crossings_.size(); ++c)
    signs_[c] = state[c][3] == End::Head ? 1 : -1;
}

std::size_t LinkDiagram::label_index(int label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label)
    throw Error("edge " + std::to_string(label) + " is not in the diagram");
  return static_cast<std::size_t>(it - labels_.begin());
}

std::span<const int> LinkDiagram::strand_edges(std::size_t component) const {
  if (component >= component_count()) throw Error("component index out of range");
  if (is_free_loop(component)) return {};
  return strands_[component];
}

bool LinkDiagram::has_edge(int label) const {
  return std::binary_search(labels_.begin(), labels_.end(), label);
}

std::size_t LinkDiagram::component_of_edge(int label) const {
  return component_of_[label_index(label)];
}

Endpoint LinkDiagram::head(int label) const { return ends_[label_index(label)][0]; }
Endpoint LinkDiagram::tail(int label) const { return ends_[label_index(label)][1]; }

std::size_t LinkDiagram::under_component(std::size_t crossing) const {
  return component_of_edge(crossings_.at(crossing)[0]);
}

std::size_t LinkDiagram::over_component(std::size_t crossing) const {
  return component_of_edge(crossings_.at(crossing)[1]);
}

// ---------------------------------------------------------------------------
// PD text

namespace {

class PdLexer {
 public:
  explicit PdLexer(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size()) {
      char ch = text_[pos_];
      if (ch == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        advance();
      } else {
        break;
      }
    }
  }
  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void expect(char ch) {
    skip_space();
    if (peek() != ch) fail(std::string("expected '") + ch + "'");
    advance();
  }
  int integer() {
    skip_space();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a positive edge label");
    long long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      if (v > 1'000'000'000) fail("edge label too large");
      advance();
    }
    if (v == 0) fail("edge labels must be positive");
    return static_cast<int>(v);
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace

LinkDiagram parse_pd(std::string_view text) {
  PdLexer lex(text);
  std::vector<Crossing> crossings;
  int loops = 0;
  for (;;) {
    lex.skip_space();
    if (lex.done()) break;
    char ch = lex.peek();
    if (ch == 'O') {
      lex.advance();
      ++loops;
    } else if (ch == 'X') {
      lex.advance();
      lex.expect('(');
      Crossing x{};
      for (int s = 0; s < 4; ++s) {
        if (s > 0) lex.expect(',');
        x[s] = lex.integer();
      }
      lex.expect(')');
      crossings.push_back(x);
    } else {
      lex.fail(std::string("unexpected character '") + ch + "'");
    }
  }
  return LinkDiagram(std::move(crossings), loops);
}

std::string to_pd(const LinkDiagram& d) {
  std::string out;
  for (const auto& x : d.crossings()) {
    if (!out.empty()) out += ' ';
    out += "X(" + std::to_string(x[0]) + "," + std::to_string(x[1]) + "," +
           std::to_string(x[2]) + "," + std::to_string(x[3]) + ")";
  }
  for (int i = 0; i < d.free_loops(); ++i) {
    if (!out.empty()) out += ' ';
    out += 'O';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Invariants

std::size_t component_count(const LinkDiagram& d) { return d.component_count(); }

int writhe(const LinkDiagram& d) {
  int w = 0;
  for (std::size_t c = 0; c < d.crossing_count(); ++c) w += d.sign(c);
  return w;
}

int self_writhe(const LinkDiagram& d, std::size_t component) {
  if (component >= d.component_count()) throw Error("component index out of range");
  int w = 0;
  for (std::size_t c = 0; c < d.crossing_count(); ++c)
    if (d.under_component(c) == component && d.over_component(c) == component) w += d.sign(c);
  return w;
}

int linking_number(const LinkDiagram& d, std::size_t i, std::size_t j) {
  if (i >= d.component_count() || j >= d.component_count())
    throw Error("component index out of range");
  if (i == j) throw Error("linking number needs two distinct components");
  int total = 0;
  for (std::size_t c = 0; c < d.crossing_count(); ++c) {
    auto u = d.under_component(c);
    auto o = d.over_component(c);
    if ((u == i && o == j) || (u == j && o == i)) total += d.sign(c);
  }
  if (total % 2 != 0)
    throw Error("odd signed crossing count between components; diagram is not planar");
  return total / 2;
}

LaurentPoly kauffman_bracket(const LinkDiagram& d) {
  const std::size_t n = d.crossing_count();
  if (n > kMaxBracketCrossings)
    throw Error("bracket state sum limited to " + std::to_string(kMaxBracketCrossings) +
                " crossings, diagram has " + std::to_string(n));
  if (d.component_count() == 0) throw Error("bracket of the empty diagram is undefined");

  const auto& labels = d.edge_labels();
  auto index = [&](int label) {
    return static_cast<std::size_t>(std::lower_bound(labels.begin(), labels.end(), label) -
                                    labels.begin());
  };
  std::vector<std::array<std::size_t, 4>> slots;
  slots.reserve(n);
  for (const auto& x : d.crossings())
    slots.push_back({index(x[0]), index(x[1]), index(x[2]), index(x[3])});

  // counts[a_minus_b + n][loops]
  const std::size_t max_loops = labels.size() + static_cast<std::size_t>(d.free_loops()) + 1;
  std::vector<std::vector<std::int64_t>> counts(2 * n + 1,
                                                std::vector<std::int64_t>(max_loops + 1, 0));
  UnionFind uf(labels.size());
  const std::uint64_t states = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < states; ++mask) {
    std::iota(uf.parent.begin(), uf.parent.end(), 0);
    std::size_t loops = labels.size();
    int a_count = 0;
    for (std::size_t c = 0; c < n; ++c) {
      const auto& s = slots[c];
      if ((mask >> c & 1) == 0) {
        ++a_count;
        loops -= uf.unite(s[0], s[1]);
        loops -= uf.unite(s[2], s[3]);
      } else {
        loops -= uf.unite(s[0], s[3]);
        loops -= uf.unite(s[1], s[2]);
      }
    }
    loops += static_cast<std::size_t>(d.free_loops());
    int diff = 2 * a_count - static_cast<int>(n);
    ++counts[static_cast<std::size_t>(diff + static_cast<int>(n))][loops];
  }

  const LaurentPoly loop_factor = LaurentPoly::monomial(2, -1) + LaurentPoly::monomial(-2, -1);
  std::vector<LaurentPoly> powers{LaurentPoly::constant(1)};
  LaurentPoly result;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    int exponent = static_cast<int>(k) - static_cast<int>(n);
    for (std::size_t loops = 1; loops <= max_loops; ++loops) {
      if (counts[k][loops] == 0) continue;
      while (powers.size() < loops) powers.push_back(powers.back() * loop_factor);
      result += (powers[loops - 1] * LaurentPoly::monomial(exponent, counts[k][loops]));
    }
  }
  return result;
}

LaurentPoly normalized_bracket(const LinkDiagram& d) {
  int w = writhe(d);
  std::int64_t sign = (w % 2 == 0) ? 1 : -1;
  return kauffman_bracket(d) * LaurentPoly::monomial(-3 * w, sign);
}

// ---------------------------------------------------------------------------
// Constructions

LinkDiagram mirror(const LinkDiagram& d) {
  // Reflect the projection plane: the incoming under-strand stays in slot 0
  // and the cyclic order reverses.
  std::vector<Crossing> out;
  out.reserve(d.crossing_count());
  for (const auto& x : d.crossings()) out.push_back({x[0], x[3], x[2], x[1]});
  LinkDiagram m(out, d.free_loops());

  // Over-only components of two edges are oriented by slot position, which
  // the reflection changes; swap their labels to keep the original direction.
  for (std::size_t comp = 0; comp < d.strand_count(); ++comp) {
    auto want = d.strand_edges(comp);
    auto got = m.strand_edges(comp);
    if (std::equal(want.begin(), want.end(), got.begin(), got.end())) continue;
    if (want.size() != 2) throw Error("mirror could not preserve strand orientation");
    int a = want[0], b = want[1];
    for (auto& x : out)
      for (auto& label : x) label = label == a ? b : (label == b ? a : label);
    m = LinkDiagram(out, d.free_loops());
    got = m.strand_edges(m.component_of_edge(a));
    if (!(got.size() == 2 && got[0] == a && got[1] == b))
      throw Error("mirror could not preserve strand orientation");
  }
  return m;
}

LinkDiagram disjoint_union(const LinkDiagram& a, const LinkDiagram& b) {
  std::vector<Crossing> out = a.crossings();
  int shift = a.max_label();
  for (auto x : b.crossings()) {
    for (auto& label : x) label += shift;
    out.push_back(x);
  }
  return LinkDiagram(std::move(out), a.free_loops() + b.free_loops());
}

LinkDiagram compact_labels(const LinkDiagram& d) {
  std::map<int, int> rename;
  int next = 1;
  for (int label : d.edge_labels()) rename[label] = next++;
  std::vector<Crossing> out = d.crossings();
  for (auto& x : out)
    for (auto& label : x) label = rename.at(label);
  return LinkDiagram(std::move(out), d.free_loops());
}

LinkDiagram braid_closure(int strands, std::span<const int> word) {
  if (strands < 1) throw Error("a braid needs at least one strand");
  std::vector<int> bottom(static_cast<std::size_t>(strands));
  std::iota(bottom.begin(), bottom.end(), 1);
  std::vector<int> current = bottom;
  std::vector<bool> touched(static_cast<std::size_t>(strands), false);
  int next_label = strands + 1;
  std::vector<Crossing> crossings;
  for (int letter : word) {
    int i = letter < 0 ? -letter : letter;
    if (letter == 0 || i >= strands)
      throw Error("braid letter " + std::to_string(letter) + " out of range for " +
                  std::to_string(strands) + " strands");
    auto left = static_cast<std::size_t>(i - 1);
    auto right = static_cast<std::size_t>(i);
    int in_left = current[left];
    int in_right = current[right];
    int out_left = next_label++;
    int out_right = next_label++;
    // Strands run upward; slot order is counterclockwise from the incoming
    // under-strand.
    if (letter > 0)
      crossings.push_back({in_right, out_right, out_left, in_left});
    else
      crossings.push_back({in_left, in_right, out_right, out_left});
    current[left] = out_left;
    current[right] = out_right;
    touched[left] = touched[right] = true;
  }
  // Close up: identify the top label of each position with its bottom label.
  std::map<int, int> rename;
  int loops = 0;
  for (std::size_t k = 0; k < current.size(); ++k) {
    if (!touched[k]) {
      ++loops;
      continue;
    }
    rename[current[k]] = bottom[k];
  }
  for (auto& x : crossings)
    for (auto& label : x) {
      auto it = rename.find(label);
      if (it != rename.end()) label = it->second;
    }
  return compact_labels(LinkDiagram(std::move(crossings), loops));
}

}  // namespace surgery
