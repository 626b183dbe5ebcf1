#include "surgery/surgery1d2d.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "surgery/error.hpp"

namespace surgery {

namespace {

// Rotates crossings so that every under-strand is entered at slot 0, choosing
// each component's direction from the preferred head of its smallest
// preferred label.
std::vector<Crossing> reorient(std::vector<Crossing> xs, const std::map<int, Endpoint>& heads,
                               const std::vector<int>& fresh) {
  std::map<int, std::vector<Endpoint>> where;
  for (std::size_t c = 0; c < xs.size(); ++c)
    for (int s = 0; s < 4; ++s) where[xs[c][s]].push_back({c, s});
  auto other = [&](int label, Endpoint p) {
    const auto& w = where.at(label);
    return w[0] == p ? w[1] : w[0];
  };
  auto is_fresh = [&](int label) {
    return std::find(fresh.begin(), fresh.end(), label) != fresh.end();
  };

  std::map<int, bool> visited;
  std::vector<bool> rotate(xs.size(), false);
  for (auto& [label, _] : where) {
    if (visited[label]) continue;
    // Gather the undirected cycle to pick the steering label.
    std::vector<int> cycle;
    {
      Endpoint at = where.at(label)[1];
      int cur = label;
      do {
        cycle.push_back(cur);
        Endpoint next{at.crossing, at.slot ^ 2};
        cur = xs[next.crossing][next.slot];
        at = other(cur, next);
      } while (cur != label);
    }
    int steer = -1;
    for (int e : cycle)
      if (!is_fresh(e) && (steer < 0 || e < steer)) steer = e;
    if (steer < 0) steer = *std::min_element(cycle.begin(), cycle.end());

    int cur = steer;
    Endpoint h = heads.at(steer);
    do {
      visited[cur] = true;
      if (h.slot == 2) rotate[h.crossing] = true;
      Endpoint next{h.crossing, h.slot ^ 2};
      cur = xs[next.crossing][next.slot];
      h = other(cur, next);
    } while (cur != steer);
  }
  for (std::size_t c = 0; c < xs.size(); ++c)
    if (rotate[c]) xs[c] = {xs[c][2], xs[c][3], xs[c][0], xs[c][1]};
  return xs;
}

void check_loop(const LinkDiagram& d, const ArcRef& arc) {
  if (arc.id < 0 || arc.id >= d.free_loops())
    throw Error("free loop " + std::to_string(arc.id) + " is not in the diagram");
}

}  // namespace

LinkDiagram one_dim_zero_surgery(const LinkDiagram& d, const SurgerySite1D& site,
                                 bool preserve_orientation) {
  using Kind = ArcRef::Kind;
  const ArcRef& a = site.first;
  const ArcRef& b = site.second;

  if (a.kind == Kind::FreeLoop || b.kind == Kind::FreeLoop) {
    int loops = d.free_loops();
    if (a.kind == Kind::FreeLoop) check_loop(d, a);
    if (b.kind == Kind::FreeLoop) check_loop(d, b);
    if (a.kind == Kind::Edge && !d.has_edge(a.id))
      throw Error("edge " + std::to_string(a.id) + " is not in the diagram");
    if (b.kind == Kind::Edge && !d.has_edge(b.id))
      throw Error("edge " + std::to_string(b.id) + " is not in the diagram");
    if (a == b) {
      // Two marks on one circle: the coherent band splits it in two.
      if (site.reconnection == Reconnection::Coherent) ++loops;
    } else {
      --loops;
    }
    return LinkDiagram(d.crossings(), loops);
  }

  if (a.id == b.id) throw Error("surgery site needs two distinct edges");
  for (int label : {a.id, b.id})
    if (!d.has_edge(label)) throw Error("edge " + std::to_string(label) + " is not in the diagram");
  if (preserve_orientation && site.reconnection == Reconnection::Crossed)
    throw Error("crossed reconnection does not preserve strand orientations");

  const Endpoint ta = d.tail(a.id), ha = d.head(a.id);
  const Endpoint tb = d.tail(b.id), hb = d.head(b.id);
  std::vector<Crossing> xs = d.crossings();
  std::map<int, Endpoint> heads;
  for (int label : d.edge_labels())
    if (label != a.id && label != b.id) heads[label] = d.head(label);

  const int first = d.max_label() + 1;
  const int second = d.max_label() + 2;
  auto put = [&](Endpoint p, int label) { xs[p.crossing][p.slot] = label; };
  if (site.reconnection == Reconnection::Coherent) {
    put(ta, first);
    put(hb, first);
    heads[first] = hb;
    put(tb, second);
    put(ha, second);
    heads[second] = ha;
  } else {
    put(ta, first);
    put(tb, first);
    heads[first] = tb;
    put(ha, second);
    put(hb, second);
    heads[second] = hb;
  }
  return LinkDiagram(reorient(std::move(xs), heads, {first, second}), d.free_loops());
}

// ---------------------------------------------------------------------------

SurfaceDescriptor::SurfaceDescriptor(std::vector<int> genera) : genera_(std::move(genera)) {
  for (int g : genera_)
    if (g < 0) throw Error("surface genus must be non-negative, got " + std::to_string(g));
}

int SurfaceDescriptor::euler_characteristic() const {
  int chi = 0;
  for (std::size_t i = 0; i < genera_.size(); ++i) chi += euler_characteristic(i);
  return chi;
}

int SurfaceDescriptor::euler_characteristic(std::size_t component) const {
  return 2 - 2 * genera_.at(component);
}

std::vector<int> SurfaceDescriptor::sorted_genera() const {
  std::vector<int> g = genera_;
  std::sort(g.begin(), g.end());
  return g;
}

namespace {

void check_component(const SurfaceDescriptor& s, std::size_t c) {
  if (c >= s.component_count())
    throw Error("surface component " + std::to_string(c) + " out of range (" +
                std::to_string(s.component_count()) + " components)");
}

}  // namespace

SurfaceDescriptor two_dim_zero_surgery(const SurfaceDescriptor& s, const JoinSite& site) {
  check_component(s, site.first);
  check_component(s, site.second);
  std::vector<int> g = s.genera();
  if (site.first == site.second) {
    g[site.first] += 1;
  } else {
    auto lo = std::min(site.first, site.second);
    auto hi = std::max(site.first, site.second);
    g[lo] += g[hi];
    g.erase(g.begin() + static_cast<std::ptrdiff_t>(hi));
  }
  return SurfaceDescriptor(std::move(g));
}

SurfaceDescriptor two_dim_one_surgery(const SurfaceDescriptor& s, const CutSite& site) {
  check_component(s, site.component);
  std::vector<int> g = s.genera();
  int& genus = g[site.component];
  switch (site.kind) {
    case CurveKind::TrivialSeparating:
      g.push_back(0);
      break;
    case CurveKind::NonSeparating:
      if (genus == 0) throw Error("a sphere has no non-separating curve");
      genus -= 1;
      break;
    case CurveKind::SeparatingSplit:
      if (site.split_first < 0 || site.split_second < 0)
        throw Error("genus split must be non-negative");
      if (site.split_first + site.split_second != genus)
        throw Error("genus split (" + std::to_string(site.split_first) + "," +
                    std::to_string(site.split_second) + ") does not sum to genus " +
                    std::to_string(genus));
      genus = site.split_first;
      g.push_back(site.split_second);
      break;
  }
  return SurfaceDescriptor(std::move(g));
}

SurfaceDescriptor apply_surgery(const SurfaceDescriptor& s, const SurgerySite2D& site) {
  return std::visit(
      [&](const auto& v) -> SurfaceDescriptor {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, JoinSite>)
          return two_dim_zero_surgery(s, v);
        else
          return two_dim_one_surgery(s, v);
      },
      site);
}

}  // namespace surgery
