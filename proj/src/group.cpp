#include "surgery/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <set>

#include "surgery/error.hpp"

namespace surgery {

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (int x : w) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

Word cyclic_reduce(const Word& w) {
  Word r = free_reduce(w);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[lo] == -r[hi - 1]) {
    ++lo;
    --hi;
  }
  return Word(r.begin() + static_cast<std::ptrdiff_t>(lo), r.begin() + static_cast<std::ptrdiff_t>(hi));
}

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& x : out) x = -x;
  return out;
}

int exponent_sum(const Word& w, int generator) {
  int s = 0;
  for (int x : w) {
    if (x == generator + 1) ++s;
    if (x == -(generator + 1)) --s;
  }
  return s;
}

Word canonical_relator(const Word& w) {
  Word r = cyclic_reduce(w);
  if (r.empty()) return r;
  Word best;
  for (const Word& v : {r, inverse(r)}) {
    for (std::size_t s = 0; s < v.size(); ++s) {
      Word rot(v.begin() + static_cast<std::ptrdiff_t>(s), v.end());
      rot.insert(rot.end(), v.begin(), v.begin() + static_cast<std::ptrdiff_t>(s));
      if (best.empty() || rot < best) best = std::move(rot);
    }
  }
  return best;
}

std::string word_to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    int g = std::abs(w[i]) - 1;
    std::string name = g < 26 ? std::string(1, static_cast<char>('a' + g)) : "x" + std::to_string(g + 1);
    int power = static_cast<int>(j - i) * (w[i] > 0 ? 1 : -1);
    if (!out.empty()) out += ' ';
    out += name;
    if (power != 1) out += "^" + std::to_string(power);
    i = j;
  }
  return out;
}

void GroupPresentation::validate() const {
  if (generator_count < 0) throw Error("negative generator count");
  for (const auto& r : relators)
    for (int x : r)
      if (x == 0 || std::abs(x) > generator_count)
        throw Error("relator letter " + std::to_string(x) + " does not name one of " +
                    std::to_string(generator_count) + " generators");
}

std::size_t GroupPresentation::total_length() const {
  std::size_t n = 0;
  for (const auto& r : relators) n += r.size();
  return n;
}

// ---------------------------------------------------------------------------

namespace {

void tidy(std::vector<Word>& rels) {
  std::set<Word> seen;
  std::vector<Word> out;
  for (auto& r : rels) {
    Word c = cyclic_reduce(r);
    if (c.empty()) continue;
    if (!seen.insert(canonical_relator(c)).second) continue;
    out.push_back(std::move(c));
  }
  rels = std::move(out);
}

// Replaces every occurrence of generator g (0-based) by `image`.
void substitute(std::vector<Word>& rels, int g, const Word& image) {
  Word inv = inverse(image);
  for (auto& r : rels) {
    Word out;
    for (int x : r) {
      if (x == g + 1)
        out.insert(out.end(), image.begin(), image.end());
      else if (x == -(g + 1))
        out.insert(out.end(), inv.begin(), inv.end());
      else
        out.push_back(x);
    }
    r = std::move(out);
  }
}

}  // namespace

GroupPresentation tietze_simplify(const GroupPresentation& p, std::size_t budget) {
  p.validate();
  std::vector<Word> rels = p.relators;
  std::vector<bool> eliminated(static_cast<std::size_t>(p.generator_count), false);
  tidy(rels);
  while (budget > 0) {
    bool changed = false;
    for (std::size_t k = 0; k < rels.size() && !changed; ++k) {
      const Word& r = rels[k];
      if (r.size() == 1) {
        int g = std::abs(r[0]) - 1;
        Word none;
        rels.erase(rels.begin() + static_cast<std::ptrdiff_t>(k));
        substitute(rels, g, none);
        eliminated[static_cast<std::size_t>(g)] = true;
        changed = true;
      } else if (r.size() == 2 && std::abs(r[0]) != std::abs(r[1])) {
        // x^e y^d = 1 gives x = y^(-d e).
        int x = r[0], y = r[1];
        int g = std::abs(x) - 1;
        int e = x > 0 ? 1 : -1;
        Word image{-y * e};
        rels.erase(rels.begin() + static_cast<std::ptrdiff_t>(k));
        substitute(rels, g, image);
        eliminated[static_cast<std::size_t>(g)] = true;
        changed = true;
      }
    }
    if (!changed) break;
    --budget;
    tidy(rels);
  }
  // Renumber surviving generators.
  std::vector<int> new_index(eliminated.size(), -1);
  int next = 0;
  for (std::size_t g = 0; g < eliminated.size(); ++g)
    if (!eliminated[g]) new_index[g] = next++;
  GroupPresentation out;
  out.generator_count = next;
  for (auto& r : rels) {
    Word w;
    for (int x : r) {
      int ni = new_index[static_cast<std::size_t>(std::abs(x) - 1)];
      w.push_back(x > 0 ? ni + 1 : -(ni + 1));
    }
    out.relators.push_back(std::move(w));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Coset enumeration

namespace {

constexpr std::size_t kUndef = std::numeric_limits<std::size_t>::max();

class CosetTable {
 public:
  CosetTable(const GroupPresentation& p, std::size_t max_cosets)
      : cols_(static_cast<std::size_t>(2 * p.generator_count)), max_(max_cosets) {
    for (const auto& r : p.relators) {
      std::vector<std::size_t> cw;
      for (int x : free_reduce(r)) cw.push_back(column(x));
      if (!cw.empty()) relators_.push_back(std::move(cw));
    }
    new_coset();
  }

  EnumerationResult run() {
    EnumerationResult res;
    for (std::size_t a = 0; a < rows() && !overflow_; ++a) {
      for (const auto& r : relators_) {
        if (!alive(a) || overflow_) break;
        scan_and_fill(a, r);
      }
      for (std::size_t x = 0; x < cols_ && alive(a) && !overflow_; ++x)
        if (at(a, x) == kUndef) define(a, x);
    }
    res.cosets_used = rows();
    if (overflow_) return res;
    res.outcome = EnumerationResult::Outcome::Finite;
    std::vector<std::size_t> renumber(rows(), kUndef);
    std::size_t n = 0;
    for (std::size_t c = 0; c < rows(); ++c)
      if (alive(c)) renumber[c] = n++;
    res.order = n;
    for (std::size_t c = 0; c < rows(); ++c) {
      if (!alive(c)) continue;
      std::vector<std::size_t> row(cols_);
      for (std::size_t x = 0; x < cols_; ++x) row[x] = renumber[at(c, x)];
      res.table.push_back(std::move(row));
    }
    return res;
  }

 private:
  static std::size_t column(int letter) {
    auto g = static_cast<std::size_t>(std::abs(letter) - 1);
    return 2 * g + (letter > 0 ? 0 : 1);
  }
  static std::size_t inv(std::size_t x) { return x ^ 1U; }

  std::size_t rows() const { return parent_.size(); }
  std::size_t& at(std::size_t c, std::size_t x) { return table_[c * cols_ + x]; }
  bool alive(std::size_t c) const { return parent_[c] == c; }

  std::size_t new_coset() {
    std::size_t c = rows();
    parent_.push_back(c);
    table_.resize(table_.size() + cols_, kUndef);
    return c;
  }

  void define(std::size_t c, std::size_t x) {
    if (rows() >= max_) {
      overflow_ = true;
      return;
    }
    std::size_t d = new_coset();
    at(c, x) = d;
    at(d, inv(x)) = c;
  }

  void scan_and_fill(std::size_t a, const std::vector<std::size_t>& w) {
    std::size_t f = a, b = a;
    std::size_t i = 0, j = w.size();  // unscanned letters are w[i, j)
    while (true) {
      while (i < j && at(f, w[i]) != kUndef) f = at(f, w[i++]);
      if (i == j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j > i && at(b, inv(w[j - 1])) != kUndef) b = at(b, inv(w[--j]));
      if (j == i) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        at(f, w[i]) = b;
        at(b, inv(w[i])) = f;
        return;
      }
      define(f, w[i]);
      if (overflow_) return;
    }
  }

  std::size_t rep(std::size_t c) {
    std::size_t r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      std::size_t next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }

  void merge(std::size_t k, std::size_t l, std::vector<std::size_t>& queue) {
    std::size_t p = rep(k), q = rep(l);
    if (p == q) return;
    std::size_t lo = std::min(p, q), hi = std::max(p, q);
    parent_[hi] = lo;
    queue.push_back(hi);
  }

  void coincidence(std::size_t a, std::size_t b) {
    std::vector<std::size_t> queue;
    merge(a, b, queue);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      std::size_t g = queue[qi];
      for (std::size_t x = 0; x < cols_; ++x) {
        std::size_t d = at(g, x);
        if (d == kUndef) continue;
        at(d, inv(x)) = kUndef;
        std::size_t mu = rep(g), nu = rep(d);
        if (at(mu, x) != kUndef)
          merge(nu, at(mu, x), queue);
        else if (at(nu, inv(x)) != kUndef)
          merge(mu, at(nu, inv(x)), queue);
        else {
          at(mu, x) = nu;
          at(nu, inv(x)) = mu;
        }
      }
    }
  }

  std::size_t cols_;
  std::size_t max_;
  std::vector<std::vector<std::size_t>> relators_;
  std::vector<std::size_t> table_;
  std::vector<std::size_t> parent_;
  bool overflow_ = false;
};

}  // namespace

EnumerationResult todd_coxeter(const GroupPresentation& p, std::size_t max_cosets) {
  p.validate();
  if (max_cosets < 1) throw Error("max_cosets must be at least 1");
  if (p.generator_count == 0) {
    EnumerationResult r;
    r.outcome = EnumerationResult::Outcome::Finite;
    r.order = 1;
    r.cosets_used = 1;
    r.table = {{}};
    return r;
  }
  return CosetTable(p, max_cosets).run();
}

}  // namespace surgery
