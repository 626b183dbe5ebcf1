#include "surgery/dehn.hpp"

#include <algorithm>
#include <numeric>

#include "surgery/error.hpp"

namespace surgery {

FramedLink::FramedLink(LinkDiagram d, std::vector<int> f) : diagram(std::move(d)), framings(std::move(f)) {
  if (framings.size() != diagram.component_count())
    throw Error("framing arity: " + std::to_string(framings.size()) + " framings for " +
                std::to_string(diagram.component_count()) + " components");
}

namespace {

int find(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x)
    x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
  return x;
}

Word power(int generator, int exponent) {
  Word w(static_cast<std::size_t>(std::abs(exponent)), exponent > 0 ? generator + 1 : -(generator + 1));
  return w;
}

}  // namespace

WirtingerPresentation wirtinger(const LinkDiagram& d) {
  WirtingerPresentation out;
  const auto n = static_cast<std::size_t>(d.max_label()) + 1;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& x : d.crossings()) {
    int a = find(parent, x[1]), b = find(parent, x[3]);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  // Roots are the smallest labels of their arcs, so ascending roots order
  // arcs by smallest edge.
  std::vector<int> root_index(n, -1);
  out.arc_of_edge.assign(n, 0);
  int arcs = 0;
  for (int label : d.edge_labels()) {
    int r = find(parent, label);
    if (root_index[static_cast<std::size_t>(r)] < 0) root_index[static_cast<std::size_t>(r)] = arcs++;
    out.arc_of_edge[static_cast<std::size_t>(label)] = root_index[static_cast<std::size_t>(r)];
  }
  out.arc_count = static_cast<std::size_t>(arcs);
  out.group.generator_count = arcs + d.free_loops();
  for (std::size_t c = 0; c < d.crossing_count(); ++c) {
    const auto& x = d.crossings()[c];
    int o = out.arc_of_edge[static_cast<std::size_t>(x[1])];
    int i = out.arc_of_edge[static_cast<std::size_t>(x[0])];
    int j = out.arc_of_edge[static_cast<std::size_t>(x[2])];
    int e = d.sign(c);
    out.group.relators.push_back({-e * (o + 1), i + 1, e * (o + 1), -(j + 1)});
  }
  for (std::size_t comp = 0; comp < d.component_count(); ++comp) {
    if (d.is_free_loop(comp))
      out.meridian.push_back(arcs + static_cast<int>(comp - d.strand_count()));
    else
      out.meridian.push_back(out.arc_of_edge[static_cast<std::size_t>(d.strand_edges(comp)[0])]);
  }
  return out;
}

Word longitude_word(const LinkDiagram& d, std::size_t component, int framing,
                    const WirtingerPresentation& w) {
  if (component >= d.component_count())
    throw Error("component " + std::to_string(component) + " out of range");
  Word word;
  int m = w.meridian[component];
  if (d.is_free_loop(component)) return power(m, framing);
  for (int e : d.strand_edges(component)) {
    Endpoint h = d.head(e);
    if (h.slot != 0) continue;
    const auto& x = d.crossings()[h.crossing];
    int o = w.arc_of_edge[static_cast<std::size_t>(x[1])];
    word.push_back(d.sign(h.crossing) * (o + 1));
  }
  Word corr = power(m, framing - self_writhe(d, component));
  word.insert(word.end(), corr.begin(), corr.end());
  return free_reduce(word);
}

GroupPresentation surgery_group(const FramedLink& fl) {
  auto w = wirtinger(fl.diagram);
  GroupPresentation p = w.group;
  for (std::size_t c = 0; c < fl.diagram.component_count(); ++c)
    p.relators.push_back(longitude_word(fl.diagram, c, fl.framings[c], w));
  return p;
}

IntMatrix linking_matrix(const FramedLink& fl) {
  std::size_t n = fl.diagram.component_count();
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = fl.framings[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      int lk = linking_number(fl.diagram, i, j);
      m(i, j) = lk;
      m(j, i) = lk;
    }
  }
  return m;
}

AbelianGroupDecomp h1_of_surgery(const FramedLink& fl) { return cokernel(linking_matrix(fl)); }

IntMatrix exponent_matrix(const GroupPresentation& p) {
  p.validate();
  IntMatrix m(p.relators.size(), static_cast<std::size_t>(p.generator_count));
  for (std::size_t r = 0; r < p.relators.size(); ++r)
    for (int x : p.relators[r]) m(r, static_cast<std::size_t>(std::abs(x) - 1)) += x > 0 ? 1 : -1;
  return m;
}

AbelianGroupDecomp abelianization(const GroupPresentation& p) { return cokernel(exponent_matrix(p)); }

FramedLink blow_up(const FramedLink& fl, int sign) {
  if (sign != 1 && sign != -1) throw Error("blow-up framing must be +1 or -1");
  LinkDiagram d(fl.diagram.crossings(), fl.diagram.free_loops() + 1);
  auto f = fl.framings;
  // The new loop is the last component.
  f.push_back(sign);
  return FramedLink(std::move(d), std::move(f));
}

}  // namespace surgery
