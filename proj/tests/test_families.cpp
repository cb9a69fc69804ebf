#include <set>

#include "doctest.h"
#include "liftshadow/canonical.hpp"
#include "liftshadow/enumerate.hpp"
#include "liftshadow/families.hpp"
#include "liftshadow/incidence.hpp"
#include "oracles.hpp"

using namespace liftshadow;

namespace {

std::vector<Structure> graphs(std::size_t n) { return enumerate_structures(Signature::digraph(true), n); }

}  // namespace

TEST_CASE("k-colouring families") {
  auto three = k_coloring_family(3);
  REQUIRE(three.members.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(shadow(three.members[i]) == complete_graph(2));
    CHECK(three.members[i].colors_of(0) == std::vector<std::size_t>{i});
    CHECK(three.members[i].colors_of(1) == std::vector<std::size_t>{i});
  }
  CHECK_THROWS_AS(k_coloring_family(0), std::invalid_argument);

  const auto all = graphs(6);
  REQUIRE(all.size() == 1 + 2 + 6 + 20 + 90 + 544 + 5096);
  auto one = k_coloring_family(1);
  auto two = k_coloring_family(2);
  for (const auto& g : all) {
    CHECK(shadow_member(g, one).has_value() == (g.tuple_count() == 0));
    CHECK(shadow_member(g, two).has_value() == (oracle::k_colorable(g, 2)));
    CHECK(shadow_member(g, three).has_value() == oracle::k_colorable(g, 3));
  }
}

TEST_CASE("local colouring families") {
  CHECK(local_coloring_family(2, 2).members.size() == 2);
  CHECK(local_coloring_family(1, 2).members.size() == 3);
  CHECK(local_coloring_family(2, 3).members.size() == 6);
  CHECK(local_coloring_family(1, 1).members.size() == 1);
  CHECK_THROWS_AS(local_coloring_family(3, 2), std::invalid_argument);
  CHECK_THROWS_AS(local_coloring_family(0, 2), std::invalid_argument);

  // Every member is a tree and no two are isomorphic lifts.
  for (std::size_t b = 1; b <= 4; ++b)
    for (std::size_t a = 1; a <= b; ++a) {
      auto f = local_coloring_family(a, b);
      for (std::size_t i = 0; i < f.members.size(); ++i) {
        CHECK(incidence_analysis(f.members[i].structure()).is_tree);
        for (std::size_t j = i + 1; j < f.members.size(); ++j)
          CHECK_FALSE(isomorphic(f.members[i].structure(), f.members[j].structure()));
      }
    }

  // (2,3): centre colour c with leaves carrying the other two colours.
  auto f23 = local_coloring_family(2, 3);
  for (std::size_t i = 3; i < 6; ++i) {
    const auto& star = f23.members[i];
    CHECK(shadow(star) == make_graph(3, {{0, 1}, {0, 2}}));
    std::set<std::size_t> used;
    for (Element v = 0; v < 3; ++v) used.insert(star.colors_of(v)[0]);
    CHECK(used.size() == 3);
  }

  const auto all = graphs(6);
  auto f22 = local_coloring_family(2, 2);
  auto f12 = local_coloring_family(1, 2);
  std::size_t mismatches = 0;
  for (const auto& g : all) {
    mismatches += shadow_member(g, f22).has_value() != oracle::k_colorable(g, 2);
    CHECK(shadow_member(g, f12).has_value() == (g.tuple_count() == 0));
  }
  CHECK(mismatches == 0);
}

TEST_CASE("local (2,3) colourings by brute force") {
  // Each closed neighbourhood sees at most 2 colours, adjacent vertices differ.
  auto f = local_coloring_family(2, 3);
  for (const auto& g : graphs(5)) {
    bool found = oracle::for_each_map(g.size(), 3, [&](const std::vector<Element>& c) {
      for (auto t : g.tuples(0))
        if (c[t[0]] == c[t[1]]) return false;
      for (Element v = 0; v < g.size(); ++v) {
        std::set<Element> seen{c[v]};
        for (auto t : g.tuples(0))
          if (t[0] == v) seen.insert(c[t[1]]);
        if (seen.size() > 2) return false;
      }
      return true;
    });
    CHECK(shadow_member(g, f).has_value() == found);
  }
}
