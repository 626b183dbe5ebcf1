#pragma once

#include <cstddef>
#include <vector>

#include "surgery/diagram.hpp"
#include "surgery/group.hpp"
#include "surgery/snf.hpp"

namespace surgery {

/// Link diagram with one integer framing per component.
struct FramedLink {
  LinkDiagram diagram;
  std::vector<int> framings;

  FramedLink() = default;
  /// Throws "framing arity" unless there is exactly one framing per component.
  FramedLink(LinkDiagram d, std::vector<int> f);
};

struct WirtingerPresentation {
  GroupPresentation group;
  /// Over-arc generator of each edge, indexed by edge label (0 where unused).
  std::vector<int> arc_of_edge;
  /// Meridian generator chosen for each component.
  std::vector<int> meridian;
  std::size_t arc_count = 0;
};

/// One generator per over-arc (ordered by smallest edge label), then one per
/// free loop. The crossing with over-arc o, incoming under-arc i, outgoing
/// under-arc j and sign e gives the relator o^-e i o^e j^-1.
WirtingerPresentation wirtinger(const LinkDiagram& d);

/// Blackboard longitude of the component read from its smallest edge, times
/// meridian^(framing - self_writhe). Its exponent sum in the component's own
/// generators equals `framing`.
Word longitude_word(const LinkDiagram& d, std::size_t component, int framing,
                    const WirtingerPresentation& w);

/// Wirtinger presentation plus one framed-longitude relator per component.
GroupPresentation surgery_group(const FramedLink& fl);

/// Framings on the diagonal, linking numbers elsewhere.
IntMatrix linking_matrix(const FramedLink& fl);
AbelianGroupDecomp h1_of_surgery(const FramedLink& fl);

/// Exponent sums: one row per relator, one column per generator.
IntMatrix exponent_matrix(const GroupPresentation& p);
AbelianGroupDecomp abelianization(const GroupPresentation& p);

/// Adds a split, unknotted component with framing `sign` (+1 or -1).
FramedLink blow_up(const FramedLink& fl, int sign);

}  // namespace surgery
