#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "surgery/diagram.hpp"

namespace surgery {

// ---------------------------------------------------------------------------
// 1-dimensional 0-surgery on link diagrams

/// How the two cut arcs are reglued. `Coherent` joins each tail half to the
/// other arc's head half and keeps every orientation; `Crossed` joins tail to
/// tail and head to head, reversing part of a strand.
enum class Reconnection { Coherent, Crossed };

/// An arc of a diagram: either an edge label or a whole free loop.
struct ArcRef {
  enum class Kind { Edge, FreeLoop };
  Kind kind = Kind::Edge;
  int id = 0;

  static ArcRef edge(int label) { return {Kind::Edge, label}; }
  static ArcRef loop(int index) { return {Kind::FreeLoop, index}; }
  friend bool operator==(const ArcRef&, const ArcRef&) = default;
};

struct SurgerySite1D {
  ArcRef first;
  ArcRef second;
  Reconnection reconnection = Reconnection::Coherent;
};

/// Cuts both arcs and reconnects them with a flat band. Two marks on the same
/// free loop are allowed; two edge arcs must differ. The new edges receive
/// labels above the diagram's maximum, and tuples are rotated so the result
/// again starts every crossing at its incoming under-strand.
///
/// With `preserve_orientation`, a `Crossed` reconnection between edges is
/// rejected.
LinkDiagram one_dim_zero_surgery(const LinkDiagram& d, const SurgerySite1D& site,
                                 bool preserve_orientation = false);

// ---------------------------------------------------------------------------
// 2-dimensional surgery on closed orientable surfaces

/// Disjoint union of closed orientable surfaces listed by genus.
class SurfaceDescriptor {
 public:
  SurfaceDescriptor() = default;
  explicit SurfaceDescriptor(std::vector<int> genera);

  const std::vector<int>& genera() const noexcept { return genera_; }
  std::size_t component_count() const noexcept { return genera_.size(); }
  int euler_characteristic() const;
  int euler_characteristic(std::size_t component) const;
  std::vector<int> sorted_genera() const;

  friend bool operator==(const SurfaceDescriptor&, const SurfaceDescriptor&) = default;

 private:
  std::vector<int> genera_;
};

/// Two marked points joined by a tube; `first == second` attaches a handle.
struct JoinSite {
  std::size_t first = 0;
  std::size_t second = 0;
};

enum class CurveKind { TrivialSeparating, NonSeparating, SeparatingSplit };

/// A simple closed curve on one component, cut open and capped by two disks.
struct CutSite {
  std::size_t component = 0;
  CurveKind kind = CurveKind::TrivialSeparating;
  int split_first = 0;
  int split_second = 0;
};

using SurgerySite2D = std::variant<JoinSite, CutSite>;

/// Joined components become one component at the lower index. Euler
/// characteristic drops by 2.
SurfaceDescriptor two_dim_zero_surgery(const SurfaceDescriptor& s, const JoinSite& site);
/// Splitting curves keep the component in place and append the new piece.
/// Euler characteristic rises by 2.
SurfaceDescriptor two_dim_one_surgery(const SurfaceDescriptor& s, const CutSite& site);
SurfaceDescriptor apply_surgery(const SurfaceDescriptor& s, const SurgerySite2D& site);

}  // namespace surgery
