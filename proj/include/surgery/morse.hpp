#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace surgery {

/// Standard quadric f(x) = -x_1^2 - ... - x_k^2 + x_{k+1}^2 + ... + x_n^2,
/// sampled on the cube [-window, window]^n.
struct MorseForm {
  int ambient_dim = 2;
  int index = 1;
  double window = 1.0;

  void validate() const;
  double value(std::span<const double> x) const;
};

enum class Quadrant { NE, NW, SW, SE };
const char* to_string(Quadrant q);

/// A point where a level curve leaves the sampling window.
struct BoundaryHit {
  std::array<double, 2> point{};
  Quadrant quadrant = Quadrant::NE;
};

struct LevelSetMesh {
  double t = 0.0;
  int ambient_dim = 2;
  /// Third coordinate is 0 in two dimensions.
  std::vector<std::array<double, 3>> vertices;
  /// Segments (two indices) in two dimensions, triangles in three.
  std::vector<std::vector<std::uint32_t>> cells;
  std::size_t component_count = 0;
  /// Two dimensions only: per component, its endpoints on the window
  /// boundary ordered by quadrant.
  std::vector<std::vector<BoundaryHit>> boundary_pairing;
};

/// Pairing as a set of quadrant groups, comparable across levels.
std::set<std::vector<Quadrant>> pairing_signature(const LevelSetMesh& m);

/// Contours {f = t} on a uniform grid with `resolution` cells per axis.
/// Grid values are evaluated in exact integer arithmetic; a grid vertex lying
/// exactly on the level is shared by every cell that reaches it, which keeps
/// the singular level t = 0 connected. The resolution must be even and at
/// least 8 so that the critical point is a grid vertex.
LevelSetMesh sample_level_set(const MorseForm& form, double t, int resolution);

/// `steps` levels spaced uniformly in the open interval (-w^2, w^2); odd
/// counts put the middle level at exactly 0.
std::vector<double> handle_levels(const MorseForm& form, int steps);
std::vector<LevelSetMesh> handle_slices(const MorseForm& form, int steps, int resolution);

enum class MeshFormat { Obj, Json };

/// OBJ: `v x y z` lines with six decimals, then `l a b` or `f a b c` with
/// 1-based indices. JSON: {"t":..,"vertices":[..],"cells":[..]} with 0-based
/// indices.
std::string emit_mesh(const LevelSetMesh& m, MeshFormat format);
MeshFormat mesh_format_from_name(const std::string& name);

}  // namespace surgery
