#include "liftshadow/families.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "liftshadow/canonical.hpp"

namespace liftshadow {

namespace {

std::vector<Lift> monochromatic_edges(const ColorSet& gamma) {
  std::vector<Lift> out;
  for (std::size_t c = 0; c < gamma.size(); ++c) out.push_back(Lift::single(complete_graph(2), gamma, {c, c}));
  return out;
}

}  // namespace

ForbFamily k_coloring_family(std::size_t k) {
  if (k < 1) throw std::invalid_argument("k_coloring_family: k must be at least 1");
  ColorSet gamma = ColorSet::numbered(k);
  return ForbFamily(gamma, Signature::digraph(true), monochromatic_edges(gamma));
}

ForbFamily local_coloring_family(std::size_t a, std::size_t b) {
  if (a < 1 || a > b) throw std::invalid_argument("local_coloring_family: need 1 <= a <= b");
  ColorSet gamma = ColorSet::numbered(b);
  auto members = monochromatic_edges(gamma);

  std::vector<std::pair<Element, Element>> edges;
  for (Element leaf = 1; leaf <= a; ++leaf) edges.push_back({0, leaf});
  const Structure star = make_graph(a + 1, edges);

  std::set<Encoding> seen;
  for (std::size_t centre = 0; centre < b; ++centre) {
    // Leaf colour sets: a-subsets of the other colours, in lexicographic order.
    std::vector<std::size_t> others;
    for (std::size_t c = 0; c < b; ++c)
      if (c != centre) others.push_back(c);
    if (others.size() < a) continue;
    std::vector<bool> pick(others.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(a), true);
    do {
      std::vector<std::size_t> coloring{centre};
      for (std::size_t i = 0; i < others.size(); ++i)
        if (pick[i]) coloring.push_back(others[i]);
      Lift l = Lift::single(star, gamma, coloring);
      if (seen.insert(canonical_labeling(l.structure()).code).second) members.push_back(std::move(l));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return ForbFamily(gamma, Signature::digraph(true), std::move(members));
}

}  // namespace liftshadow
