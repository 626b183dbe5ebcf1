#include <cmath>
#include <map>
#include <queue>
#include <set>

#include "doctest.h"
#include "surgery/error.hpp"
#include "surgery/morse.hpp"

using namespace surgery;

namespace {

// Components of the cell graph by breadth-first search over an explicit
// adjacency list, independent of the union-find inside the sampler.
std::size_t bfs_components(const LevelSetMesh& m) {
  std::vector<std::vector<std::uint32_t>> adj(m.vertices.size());
  for (const auto& c : m.cells)
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = 0; j < c.size(); ++j)
        if (i != j) adj[c[i]].push_back(c[j]);
  std::vector<bool> seen(m.vertices.size(), false);
  std::size_t count = 0;
  for (std::uint32_t s = 0; s < m.vertices.size(); ++s) {
    if (seen[s]) continue;
    ++count;
    std::queue<std::uint32_t> q;
    q.push(s);
    seen[s] = true;
    while (!q.empty()) {
      auto v = q.front();
      q.pop();
      for (auto w : adj[v])
        if (!seen[w]) {
          seen[w] = true;
          q.push(w);
        }
    }
  }
  return count;
}

// Analytic component counts of {f = t} inside the open cube for the quadric
// family. Index k negative squares out of n.
std::size_t analytic_components(int n, int k, double t) {
  int pos = n - k;
  // Cone or cross through the origin; for a definite form just the origin,
  // which carries no cells.
  if (t == 0.0) return pos == 0 ? 0 : 1;
  if (t > 0) {
    // sum_pos x^2 = t + sum_neg x^2: sphere of dim pos-1 times R^k.
    if (pos == 0) return 0;
    return pos == 1 ? 2 : 1;
  }
  if (k == 1) return 2;
  return 1;
}

std::vector<std::size_t> counts(const MorseForm& f, int steps, int res) {
  std::vector<std::size_t> out;
  for (const auto& m : handle_slices(f, steps, res)) out.push_back(m.component_count);
  return out;
}

using Q = Quadrant;

}  // namespace

TEST_CASE("validation of forms, levels and resolutions") {
  MorseForm f;
  CHECK_NOTHROW(f.validate());
  CHECK_THROWS_AS((MorseForm{4, 1, 1.0}).validate(), Error);
  CHECK_THROWS_AS((MorseForm{2, 0, 1.0}).validate(), Error);
  CHECK_THROWS_AS((MorseForm{2, 3, 1.0}).validate(), Error);
  CHECK_THROWS_AS((MorseForm{2, 1, 0.0}).validate(), Error);
  CHECK_THROWS_AS(sample_level_set(f, 1.0, 16), Error);
  CHECK_THROWS_AS(sample_level_set(f, -1.5, 16), Error);
  CHECK_THROWS_AS(sample_level_set(f, 0.0, 6), Error);
  CHECK_THROWS_AS(sample_level_set(f, 0.0, 17), Error);
  CHECK_THROWS_AS(handle_levels(f, 4), Error);
  CHECK_THROWS_AS(handle_levels(f, 1), Error);
  CHECK_THROWS_AS(mesh_format_from_name("stl"), Error);
  double x[2] = {0.5, 0.25};
  CHECK(f.value(x) == doctest::Approx(-0.25 + 0.0625));
}

TEST_CASE("handle levels are symmetric with zero in the middle") {
  auto ts = handle_levels(MorseForm{}, 5);
  REQUIRE(ts.size() == 5);
  CHECK(ts[2] == 0.0);
  for (int k = 0; k < 5; ++k) CHECK(ts[k] == doctest::Approx(-ts[4 - k]));
  CHECK(ts[0] > -1.0);
  CHECK(ts[4] < 1.0);
  auto wide = handle_levels(MorseForm{2, 1, 2.0}, 3);
  CHECK(wide[0] == doctest::Approx(-2.0));
}

TEST_CASE("hyperbola levels in the plane") {
  MorseForm f{2, 1, 1.0};
  auto neg = sample_level_set(f, -0.5, 32);
  auto pos = sample_level_set(f, 0.5, 32);
  CHECK(neg.component_count == 2);
  CHECK(pos.component_count == 2);
  // Left/right branches versus top/bottom branches.
  CHECK(pairing_signature(neg) == std::set<std::vector<Q>>{{Q::NE, Q::SE}, {Q::NW, Q::SW}});
  CHECK(pairing_signature(pos) == std::set<std::vector<Q>>{{Q::NE, Q::NW}, {Q::SW, Q::SE}});
  CHECK(pairing_signature(neg) != pairing_signature(pos));
  auto zero = sample_level_set(f, 0.0, 32);
  CHECK(zero.component_count == 1);
  CHECK(pairing_signature(zero) == std::set<std::vector<Q>>{{Q::NE, Q::NW, Q::SW, Q::SE}});
  // Every boundary hit sits on the window edge.
  for (const auto* m : {&neg, &pos, &zero})
    for (const auto& g : m->boundary_pairing)
      for (const auto& h : g)
        CHECK(std::max(std::abs(h.point[0]), std::abs(h.point[1])) ==
              doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("handle slice component sequences") {
  using V = std::vector<std::size_t>;
  for (int res : {16, 32, 64}) {
    CAPTURE(res);
    CHECK(counts({2, 1, 1.0}, 5, res) == V{2, 2, 1, 2, 2});
    CHECK(counts({3, 2, 1.0}, 5, res) == V{1, 1, 1, 2, 2});
    CHECK(counts({3, 1, 1.0}, 5, res) == V{2, 2, 1, 1, 1});
  }
}

TEST_CASE("pairing flips across the critical level") {
  auto slices = handle_slices({2, 1, 1.0}, 5, 16);
  auto before = pairing_signature(slices[0]);
  CHECK(pairing_signature(slices[1]) == before);
  CHECK(pairing_signature(slices[3]) == pairing_signature(slices[4]));
  CHECK(pairing_signature(slices[3]) != before);
}

TEST_CASE("counts agree with the analytic classification and a BFS recount") {
  for (int n : {2, 3}) {
    for (int k = 1; k <= n; ++k) {
      for (double t : {-0.75, -0.3, 0.0, 0.3, 0.75}) {
        for (int res : {16, 24}) {
          CAPTURE(n);
          CAPTURE(k);
          CAPTURE(t);
          auto m = sample_level_set({n, k, 1.0}, t, res);
          CHECK(m.component_count == analytic_components(n, k, t));
          CHECK(bfs_components(m) == m.component_count);
          for (const auto& c : m.cells) {
            CHECK(c.size() == static_cast<std::size_t>(n));
            std::set<std::uint32_t> distinct(c.begin(), c.end());
            CHECK(distinct.size() == c.size());
            for (auto v : c) CHECK(v < m.vertices.size());
          }
        }
      }
    }
  }
}

TEST_CASE("vertices lie close to the level set") {
  MorseForm f{3, 2, 1.0};
  auto m = sample_level_set(f, 0.4, 32);
  REQUIRE(!m.vertices.empty());
  double worst = 0.0;
  for (const auto& v : m.vertices) worst = std::max(worst, std::abs(f.value(v) - 0.4));
  CHECK(worst < 0.01);
}

TEST_CASE("index/sign duality preserves component counts") {
  for (int n : {2, 3})
    for (int k = 1; k < n; ++k)
      for (double t : {-0.6, -0.2, 0.0, 0.2, 0.6}) {
        auto a = sample_level_set({n, k, 1.0}, t, 16);
        auto b = sample_level_set({n, n - k, 1.0}, -t, 16);
        CHECK(a.component_count == b.component_count);
      }
}

TEST_CASE("mesh emission") {
  LevelSetMesh empty;
  CHECK(emit_mesh(empty, MeshFormat::Json) == R"({"t":0.0,"vertices":[],"cells":[]})");
  CHECK(emit_mesh(empty, MeshFormat::Obj).empty());

  LevelSetMesh tri;
  tri.t = -0.5;
  tri.ambient_dim = 3;
  tri.vertices = {{0, 0, 0}, {1, 0, 0}, {0, -0.0, 0.25}};
  tri.cells = {{0, 1, 2}};
  CHECK(emit_mesh(tri, MeshFormat::Obj) ==
        "v 0.000000 0.000000 0.000000\n"
        "v 1.000000 0.000000 0.000000\n"
        "v 0.000000 0.000000 0.250000\n"
        "f 1 2 3\n");
  CHECK(emit_mesh(tri, MeshFormat::Json) ==
        R"({"t":-0.5,"vertices":[[0.000000,0.000000,0.000000],[1.000000,0.000000,0.000000],[0.000000,0.000000,0.250000]],"cells":[[0,1,2]]})");

  auto m = sample_level_set({2, 1, 1.0}, 0.5, 16);
  auto obj = emit_mesh(m, MeshFormat::Obj);
  CHECK(obj == emit_mesh(sample_level_set({2, 1, 1.0}, 0.5, 16), MeshFormat::Obj));
  CHECK(obj.find("\nl ") != std::string::npos);
  CHECK(emit_mesh(m, MeshFormat::Json) == emit_mesh(m, MeshFormat::Json));
  CHECK(mesh_format_from_name("obj") == MeshFormat::Obj);
  CHECK(mesh_format_from_name("json") == MeshFormat::Json);
}
