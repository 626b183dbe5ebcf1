#include "surgery/fixtures.hpp"

#include <vector>

namespace surgery::fixtures {

std::optional<LinkDiagram> by_name(std::string_view name) {
  if (name == "unknot") return parse_pd(kUnknot);
  if (name == "hopf") return parse_pd(kHopf);
  if (name == "trefoil" || name == "right_trefoil") return parse_pd(kRightTrefoil);
  if (name == "left_trefoil") return mirror(parse_pd(kRightTrefoil));
  if (name == "figure_eight") return parse_pd(kFigureEight);
  if (name == "dna") return parse_pd(kDna);
  return std::nullopt;
}

LinkDiagram random_braid_link(std::mt19937_64& rng, int max_strands, int max_crossings) {
  std::uniform_int_distribution<int> strands_dist(1, std::max(1, max_strands));
  int strands = strands_dist(rng);
  std::vector<int> word;
  if (strands > 1) {
    std::uniform_int_distribution<int> length_dist(0, std::max(0, max_crossings));
    std::uniform_int_distribution<int> gen_dist(1, strands - 1);
    std::bernoulli_distribution sign_dist(0.5);
    int length = length_dist(rng);
    for (int k = 0; k < length; ++k) {
      int g = gen_dist(rng);
      word.push_back(sign_dist(rng) ? g : -g);
    }
  }
  return braid_closure(strands, word);
}

}  // namespace surgery::fixtures
