#pragma once

#include <optional>
#include <vector>

#include "liftshadow/structure.hpp"

namespace liftshadow {

/// One block-node: a tuple, or for symmetric relations a tuple merged with
/// its reversal (the lexicographically smaller one represents the pair).
struct Block {
  std::size_t relation = 0;
  std::vector<Element> tuple;

  auto operator<=>(const Block&) const = default;
};

/// Bipartite multigraph between elements and blocks. A block is joined to
/// each coordinate of its tuple, so an element repeated in a tuple gives a
/// multi-edge.
struct IncidenceMultigraph {
  std::size_t elements = 0;
  std::vector<Block> blocks;
};

IncidenceMultigraph incidence_multigraph(const Structure& s);

/// Closed walk elements[0], blocks[0], elements[1], ..., blocks[m-1],
/// elements[0]; m is its length in blocks.
struct IncidenceCycle {
  std::vector<Element> elements;
  std::vector<Block> blocks;

  std::size_t length() const { return blocks.size(); }
};

struct IncidenceSummary {
  std::optional<std::size_t> girth;  // nullopt: acyclic
  bool is_forest = true;
  bool is_tree = false;
};

IncidenceSummary incidence_analysis(const Structure& s);

/// A shortest cycle of the incidence multigraph, or nullopt for forests.
std::optional<IncidenceCycle> shortest_cycle(const Structure& s);

/// True iff `c` is a simple cycle of the incidence multigraph of `s`.
bool is_incidence_cycle(const Structure& s, const IncidenceCycle& c);

}  // namespace liftshadow
