#include "surgery/morse.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>

#include "surgery/error.hpp"

namespace surgery {

void MorseForm::validate() const {
  if (ambient_dim != 2 && ambient_dim != 3)
    throw Error("level sets are sampled in dimension 2 or 3, got " + std::to_string(ambient_dim));
  if (index < 1 || index > ambient_dim)
    throw Error("Morse index must lie in [1, " + std::to_string(ambient_dim) + "], got " +
                std::to_string(index));
  if (!(window > 0.0) || !std::isfinite(window)) throw Error("sampling window must be positive");
}

double MorseForm::value(std::span<const double> x) const {
  double f = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a) {
    double sq = x[a] * x[a];
    f += static_cast<int>(a) < index ? -sq : sq;
  }
  return f;
}

const char* to_string(Quadrant q) {
  switch (q) {
    case Quadrant::NE: return "NE";
    case Quadrant::NW: return "NW";
    case Quadrant::SW: return "SW";
    case Quadrant::SE: return "SE";
  }
  return "?";
}

std::set<std::vector<Quadrant>> pairing_signature(const LevelSetMesh& m) {
  std::set<std::vector<Quadrant>> out;
  for (const auto& group : m.boundary_pairing) {
    std::vector<Quadrant> q;
    for (const auto& hit : group) q.push_back(hit.quadrant);
    std::sort(q.begin(), q.end());
    out.insert(q);
  }
  return out;
}

namespace {

using Key = std::pair<std::uint64_t, std::uint64_t>;

struct DisjointSets {
  std::vector<std::uint32_t> parent;
  std::uint32_t make() {
    parent.push_back(static_cast<std::uint32_t>(parent.size()));
    return parent.back();
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

class Contourer {
 public:
  Contourer(const MorseForm& form, double t, int n) : form_(form), n_(n), dim_(form.ambient_dim) {
    stride_ = static_cast<std::uint64_t>(n) + 1;
    std::uint64_t count = 1;
    for (int a = 0; a < dim_; ++a) count *= stride_;
    // f on the grid is (w/n)^2 times an integer.
    level_ = t * static_cast<double>(n) * static_cast<double>(n) / (form.window * form.window);
    values_.resize(count);
    for (std::uint64_t id = 0; id < count; ++id) {
      std::int64_t f = 0;
      std::uint64_t rest = id;
      for (int a = dim_ - 1; a >= 0; --a) {
        std::int64_t m = 2 * static_cast<std::int64_t>(rest % stride_) - n;
        rest /= stride_;
        f += a < form.index ? -m * m : m * m;
      }
      values_[id] = f;
    }
    mesh_.t = t;
    mesh_.ambient_dim = dim_;
  }

  LevelSetMesh run() {
    if (dim_ == 2)
      squares();
    else
      tetrahedra();
    finish();
    return std::move(mesh_);
  }

 private:
  std::uint64_t id(int i, int j, int k = 0) const {
    std::uint64_t v = static_cast<std::uint64_t>(i) * stride_ + static_cast<std::uint64_t>(j);
    if (dim_ == 3) v = v * stride_ + static_cast<std::uint64_t>(k);
    return v;
  }
  bool positive(std::uint64_t v) const { return static_cast<double>(values_[v]) >= level_; }
  bool on_level(std::uint64_t v) const { return static_cast<double>(values_[v]) == level_; }

  double coord(std::uint64_t v, int axis) const {
    std::uint64_t rest = v;
    for (int a = dim_ - 1; a > axis; --a) rest /= stride_;
    double m = 2.0 * static_cast<double>(rest % stride_) - n_;
    return m * form_.window / n_;
  }

  // Key of the level crossing on grid segment (a, b); signs must differ.
  Key crossing_key(std::uint64_t a, std::uint64_t b) const {
    if (on_level(a)) return {a, a};
    if (on_level(b)) return {b, b};
    return {std::min(a, b), std::max(a, b)};
  }

  std::uint32_t vertex(const Key& key) {
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    auto [a, b] = key;
    std::array<double, 3> p{0.0, 0.0, 0.0};
    double r = 0.0;
    if (a != b) {
      double fa = static_cast<double>(values_[a]);
      double fb = static_cast<double>(values_[b]);
      r = (level_ - fa) / (fb - fa);
    }
    for (int axis = 0; axis < dim_; ++axis) {
      double xa = coord(a, axis);
      double xb = coord(b, axis);
      p[static_cast<std::size_t>(axis)] = xa + r * (xb - xa);
    }
    auto idx = static_cast<std::uint32_t>(mesh_.vertices.size());
    mesh_.vertices.push_back(p);
    sets_.make();
    index_.emplace(key, idx);
    return idx;
  }

  void emit(std::span<const Key> keys) {
    std::vector<std::uint32_t> cell;
    for (const auto& k : keys) cell.push_back(vertex(k));
    for (std::size_t i = 1; i < cell.size(); ++i) sets_.unite(cell[0], cell[i]);
    mesh_.cells.push_back(std::move(cell));
  }

  void segment(const Key& a, const Key& b) {
    if (a == b) return;
    std::array<Key, 2> keys{a, b};
    emit(keys);
  }

  void polygon(std::vector<Key> keys) {
    std::vector<Key> distinct;
    for (const auto& k : keys)
      if (distinct.empty() || distinct.back() != k) distinct.push_back(k);
    while (distinct.size() > 1 && distinct.front() == distinct.back()) distinct.pop_back();
    for (std::size_t i = 1; i + 1 < distinct.size(); ++i) {
      std::array<Key, 3> tri{distinct[0], distinct[i], distinct[i + 1]};
      if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) continue;
      emit(tri);
    }
  }

  void squares() {
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        const std::array<std::uint64_t, 4> v{id(i, j), id(i + 1, j), id(i + 1, j + 1),
                                             id(i, j + 1)};
        std::array<bool, 4> s{};
        for (int c = 0; c < 4; ++c) s[c] = positive(v[c]);
        std::array<bool, 4> cut{};
        int cuts = 0;
        for (int e = 0; e < 4; ++e) {
          cut[e] = s[e] != s[(e + 1) % 4];
          cuts += cut[e];
        }
        auto edge_key = [&](int e) { return crossing_key(v[e], v[(e + 1) % 4]); };
        if (cuts == 2) {
          std::array<int, 2> es{};
          int k = 0;
          for (int e = 0; e < 4; ++e)
            if (cut[e]) es[k++] = e;
          segment(edge_key(es[0]), edge_key(es[1]));
        } else if (cuts == 4) {
          // Saddle cell: the bilinear centre value decides which corners
          // are cut off.
          std::int64_t sum = 0;
          for (auto c : v) sum += values_[c];
          bool centre_positive = static_cast<double>(sum) / 4.0 >= level_;
          for (int c = 0; c < 4; ++c) {
            if (s[c] == centre_positive) continue;
            segment(edge_key((c + 3) % 4), edge_key(c));
          }
        }
      }
    }
  }

  void tetrahedra() {
    static constexpr std::array<std::array<int, 3>, 6> perms{
        {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        for (int k = 0; k < n_; ++k) {
          for (const auto& p : perms) {
            std::array<int, 3> at{i, j, k};
            std::array<std::uint64_t, 4> tet{};
            tet[0] = id(at[0], at[1], at[2]);
            for (int step = 0; step < 3; ++step) {
              ++at[static_cast<std::size_t>(p[static_cast<std::size_t>(step)])];
              tet[static_cast<std::size_t>(step) + 1] = id(at[0], at[1], at[2]);
            }
            tetrahedron(tet);
          }
        }
      }
    }
  }

  void tetrahedron(const std::array<std::uint64_t, 4>& tet) {
    std::vector<std::uint64_t> pos, neg;
    for (auto v : tet) (positive(v) ? pos : neg).push_back(v);
    if (pos.empty() || neg.empty()) return;
    if (pos.size() == 2) {
      polygon({crossing_key(pos[0], neg[0]), crossing_key(pos[0], neg[1]),
               crossing_key(pos[1], neg[1]), crossing_key(pos[1], neg[0])});
      return;
    }
    const auto& lone = pos.size() == 1 ? pos : neg;
    const auto& rest = pos.size() == 1 ? neg : pos;
    polygon({crossing_key(lone[0], rest[0]), crossing_key(lone[0], rest[1]),
             crossing_key(lone[0], rest[2])});
  }

  void finish() {
    std::map<std::uint32_t, std::vector<std::uint32_t>> by_root;
    for (std::uint32_t v = 0; v < mesh_.vertices.size(); ++v) by_root[sets_.find(v)].push_back(v);
    mesh_.component_count = by_root.size();
    if (dim_ != 2) return;
    std::vector<int> degree(mesh_.vertices.size(), 0);
    for (const auto& c : mesh_.cells)
      for (auto v : c) ++degree[v];
    for (const auto& [root, members] : by_root) {
      std::vector<BoundaryHit> hits;
      for (auto v : members) {
        if (degree[v] != 1) continue;
        const auto& p = mesh_.vertices[v];
        BoundaryHit h;
        h.point = {p[0], p[1]};
        h.quadrant = p[0] >= 0 ? (p[1] >= 0 ? Quadrant::NE : Quadrant::SE)
                               : (p[1] >= 0 ? Quadrant::NW : Quadrant::SW);
        hits.push_back(h);
      }
      std::sort(hits.begin(), hits.end(), [](const BoundaryHit& a, const BoundaryHit& b) {
        if (a.quadrant != b.quadrant) return a.quadrant < b.quadrant;
        return a.point < b.point;
      });
      mesh_.boundary_pairing.push_back(std::move(hits));
    }
  }

  const MorseForm& form_;
  int n_;
  int dim_;
  std::uint64_t stride_ = 0;
  double level_ = 0.0;
  std::vector<std::int64_t> values_;
  std::map<Key, std::uint32_t> index_;
  DisjointSets sets_;
  LevelSetMesh mesh_;
};

}  // namespace

LevelSetMesh sample_level_set(const MorseForm& form, double t, int resolution) {
  form.validate();
  double w2 = form.window * form.window;
  if (!std::isfinite(t) || !(std::abs(t) < w2))
    throw Error("level value must satisfy |t| < window^2");
  if (resolution < 8) throw Error("resolution must be at least 8");
  if (resolution % 2 != 0) throw Error("resolution must be even so the critical point is sampled");
  if (resolution > 512) throw Error("resolution above 512 is not supported");
  return Contourer(form, t, resolution).run();
}

std::vector<double> handle_levels(const MorseForm& form, int steps) {
  form.validate();
  if (steps < 3 || steps % 2 == 0) throw Error("handle slicing needs an odd step count >= 3");
  double w2 = form.window * form.window;
  std::vector<double> ts;
  for (int k = 0; k < steps; ++k)
    ts.push_back(w2 * static_cast<double>(2 * (k + 1) - (steps + 1)) / (steps + 1));
  return ts;
}

std::vector<LevelSetMesh> handle_slices(const MorseForm& form, int steps, int resolution) {
  std::vector<LevelSetMesh> out;
  for (double t : handle_levels(form, steps)) out.push_back(sample_level_set(form, t, resolution));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::string shortest(double v) {
  if (v == 0.0) return "0.0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

}  // namespace

std::string emit_mesh(const LevelSetMesh& m, MeshFormat format) {
  std::string out;
  const auto dims = static_cast<std::size_t>(m.ambient_dim == 3 ? 3 : 2);
  if (format == MeshFormat::Obj) {
    for (const auto& v : m.vertices)
      out += "v " + fixed6(v[0]) + " " + fixed6(v[1]) + " " + fixed6(v[2]) + "\n";
    for (const auto& c : m.cells) {
      out += c.size() == 2 ? "l" : "f";
      for (auto idx : c) out += " " + std::to_string(idx + 1);
      out += "\n";
    }
    return out;
  }
  out += "{\"t\":" + shortest(m.t) + ",\"vertices\":[";
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    if (i) out += ",";
    out += "[";
    for (std::size_t a = 0; a < dims; ++a) {
      if (a) out += ",";
      out += fixed6(m.vertices[i][a]);
    }
    out += "]";
  }
  out += "],\"cells\":[";
  for (std::size_t i = 0; i < m.cells.size(); ++i) {
    if (i) out += ",";
    out += "[";
    for (std::size_t k = 0; k < m.cells[i].size(); ++k) {
      if (k) out += ",";
      out += std::to_string(m.cells[i][k]);
    }
    out += "]";
  }
  out += "]}";
  return out;
}

MeshFormat mesh_format_from_name(const std::string& name) {
  if (name == "obj" || name == "OBJ") return MeshFormat::Obj;
  if (name == "json" || name == "JSON") return MeshFormat::Json;
  throw Error("unsupported mesh format '" + name + "' (expected obj or json)");
}

}  // namespace surgery
