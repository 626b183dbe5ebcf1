#pragma once

#include <optional>
#include <random>
#include <string_view>

#include "surgery/diagram.hpp"

namespace surgery::fixtures {

inline constexpr std::string_view kUnknot = "O";
/// Two crossings, both negative under the slot convention: lk = -1.
inline constexpr std::string_view kHopf = "X(1,4,2,3) X(3,2,4,1)";
/// Right-handed trefoil, writhe +3.
inline constexpr std::string_view kRightTrefoil = "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)";
inline constexpr std::string_view kFigureEight = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)";
/// Circular molecule before recombination: an unknot with two negative
/// kinks. Reconnecting edges 2 and 4 coherently yields the Hopf fixture.
inline constexpr std::string_view kDna = "X(1,2,2,3) X(3,4,4,1)";
inline constexpr int kDnaSiteA = 2;
inline constexpr int kDnaSiteB = 4;

/// Looks up a fixture by name: unknot, hopf, trefoil, left_trefoil,
/// figure_eight, dna.
std::optional<LinkDiagram> by_name(std::string_view name);

/// Closure of a uniformly random braid word. Planar by construction.
LinkDiagram random_braid_link(std::mt19937_64& rng, int max_strands, int max_crossings);

}  // namespace surgery::fixtures
