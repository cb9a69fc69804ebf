#include "doctest.h"
#include "liftshadow/canonical.hpp"
#include "liftshadow/duality.hpp"
#include "liftshadow/enumerate.hpp"
#include "liftshadow/errors.hpp"
#include "liftshadow/families.hpp"
#include "liftshadow/incidence.hpp"
#include "oracles.hpp"

using namespace liftshadow;

namespace {

std::vector<Structure> structures(const ForbFamily& f) {
  std::vector<Structure> out;
  for (const auto& m : f.members) out.push_back(m.structure());
  return out;
}

DualBounds lifted_bounds(const ForbFamily& f, std::size_t n_max) {
  DualBounds b;
  b.n_max = n_max;
  for (std::size_t c = 0; c < f.colors.size(); ++c) b.verify.cover_relations.push_back(f.base_signature.size() + c);
  return b;
}

std::vector<Structure> shadow_cores(const std::vector<Structure>& lifted, std::size_t base_relations) {
  std::vector<Structure> out;
  for (const auto& d : lifted) out.push_back(shadow(d, base_relations));
  return hom_maximal_cores(out);
}

// Brute-force reference for Forb(F) = CSP(D) on one structure.
bool oracle_agrees(const Structure& s, const std::vector<Structure>& f, const std::vector<Structure>& d) {
  bool forb = true, csp = false;
  for (const auto& x : f) forb = forb && !oracle::hom_exists(x, s);
  for (const auto& x : d) csp = csp || oracle::hom_exists(s, x);
  return forb == csp;
}

}  // namespace

TEST_CASE("csp_member") {
  CHECK(csp_member(complete_graph(2), {complete_graph(3)}));
  CHECK_FALSE(csp_member(complete_graph(4), {complete_graph(3)}));
  CHECK(csp_member(Structure(Signature::digraph(true), 0), {complete_graph(1)}));
  CHECK_FALSE(csp_member(complete_graph(2), {}));
  auto w = csp_witness(directed_path(2), {directed_path(1), transitive_tournament(3)});
  REQUIRE(w.has_value());
  CHECK(w->dual == 1);
  CHECK(is_homomorphism(directed_path(2), transitive_tournament(3), w->hom));
}

TEST_CASE("tree duals") {
  CHECK(dual_of_tree(directed_path(1)).duals.front() == Structure(Signature::digraph(), 1));
  for (std::size_t k = 1; k <= 3; ++k) {
    DualBounds searched;
    searched.provenance = DualProvenance::searched;
    auto a = dual_of_tree(directed_path(k));
    auto b = dual_of_tree(directed_path(k), searched);
    CHECK(a.provenance == DualProvenance::constructed);
    CHECK(b.provenance == DualProvenance::searched);
    CHECK(a.verified_to == 4);
    CHECK(b.verified_to == 4);
    CHECK(hom_equivalent(a.duals.front(), transitive_tournament(k)));
    CHECK(hom_equivalent(a.duals.front(), b.duals.front()));
  }
  // A single vertex: only the empty structure avoids it.
  CHECK(dual_of_tree(Structure(Signature::digraph(), 1)).duals.front().size() == 0);
  CHECK_THROWS_AS(dual_of_tree(directed_cycle(3)), std::invalid_argument);
  CHECK_THROWS_AS(dual_of_tree(make_digraph(2, {})), std::invalid_argument);

  SUBCASE("construction matches the oracle on every tree with at most 4 elements") {
    std::size_t trees = 0;
    for (const auto& t : enumerate_structures(Signature::digraph(), 4)) {
      if (!incidence_analysis(t).is_tree) continue;
      ++trees;
      const Structure d = tree_dual_construction(t);
      CHECK_FALSE(oracle::hom_exists(t, d));
      for (const auto& g : enumerate_structures(Signature::digraph(), 3)) CHECK(oracle_agrees(g, {t}, {d}));
    }
    CHECK(trees == 1 + 1 + 3 + 8);
  }

  SUBCASE("ternary and symmetric trees") {
    Signature sig({{"R", 3, false}});
    StructureBuilder b(sig, 5);
    b.add(0, {0, 1, 2}).add(0, {2, 3, 4});
    auto t = std::move(b).build();
    REQUIRE(incidence_analysis(t).is_tree);
    auto d = dual_of_tree(t, DualBounds{2, 5, DualProvenance::constructed, {}});
    CHECK(d.verified_to == 2);
    auto star = make_graph(4, {{0, 1}, {0, 2}, {0, 3}});
    auto ds = dual_of_tree(star, DualBounds{4, 5, DualProvenance::constructed, {}});
    CHECK(ds.verified_to == 4);
  }
}

TEST_CASE("dual sets of forest families") {
  auto two_arcs = make_digraph(4, {{0, 1}, {2, 3}});
  auto d = dual_set_of_family({two_arcs});
  REQUIRE(d.duals.size() == 1);
  CHECK(d.duals.front() == Structure(Signature::digraph(), 1));

  auto mixed = dual_set_of_family({directed_path(1), directed_path(2)});
  REQUIRE(mixed.duals.size() == 1);
  CHECK(hom_equivalent(mixed.duals.front(), product(Structure(Signature::digraph(), 1), transitive_tournament(2))));
  CHECK(mixed.duals.front().size() == 1);

  auto empty = dual_set_of_family(Signature::digraph(), {});
  REQUIRE(empty.duals.size() == 1);
  CHECK(empty.duals.front() == looped_vertex());
  CHECK(empty.verified_to == 4);

  // Forbidding a 1-arc and a reversed 2-path forest gives two
  // incomparable templates per component choice.
  auto disjoint = make_digraph(5, {{0, 1}, {1, 2}, {3, 4}});
  auto ds = dual_set_of_family({disjoint});
  CHECK(ds.verified_to == 4);

  CHECK_THROWS_AS(dual_set_of_family({directed_cycle(2)}), std::invalid_argument);
  CHECK_THROWS_AS(dual_set_of_family(std::vector<Structure>{}), std::invalid_argument);

  SUBCASE("every family of at most two forests with at most 4 elements") {
    std::vector<Structure> forests;
    for (auto& s : enumerate_structures(Signature::digraph(), 4))
      if (incidence_analysis(s).is_forest) forests.push_back(std::move(s));
    REQUIRE(forests.size() == 23);
    DualBounds bounds;
    bounds.n_max = 4;
    const auto small = enumerate_structures(Signature::digraph(), 3);
    std::size_t families = 0;
    for (std::size_t i = 0; i < forests.size(); ++i)
      for (std::size_t j = i; j < forests.size(); ++j) {
        std::vector<Structure> fam{forests[i]};
        if (j != i) fam.push_back(forests[j]);
        auto out = dual_set_of_family(fam, bounds);
        CHECK(out.verified_to == 4);
        for (const auto& g : small) CHECK(oracle_agrees(g, fam, out.duals));
        ++families;
      }
    CHECK(families == 276);
  }
}

TEST_CASE("verify_duality") {
  auto ok = verify_duality({directed_path(2)}, {directed_path(1)}, 4);
  CHECK(ok.status == DualityStatus::verified);
  CHECK(ok.verified_to == 4);
  CHECK_FALSE(ok.counterexample.has_value());

  auto bad = verify_duality({directed_cycle(3)}, {directed_path(1)}, 4);
  REQUIRE(bad.status == DualityStatus::counterexample);
  REQUIRE(bad.counterexample.has_value());
  const auto& c = *bad.counterexample;
  const bool forb = !oracle::hom_exists(directed_cycle(3), c);
  const bool csp = oracle::hom_exists(c, directed_path(1));
  CHECK(forb != csp);
  CHECK((*bad.side == CounterexampleSide::forb_not_csp) == forb);

  CHECK(verify_duality(Signature::digraph(), {}, {looped_vertex()}, 3).status == DualityStatus::verified);

  auto out = verify_duality({complete_graph(2)}, {complete_graph(1)}, 3, VerifyOptions{1, 1, {}});
  CHECK(out.status == DualityStatus::budget_exceeded);
  CHECK(out.verified_to >= 0);
  CHECK(out.verified_to < 3);
}

TEST_CASE("parallel sweeps report the same first counterexample") {
  auto base = verify_duality({directed_cycle(3)}, {directed_path(2)}, 4);
  for (unsigned jobs : {2U, 3U, 8U}) {
    auto par = verify_duality({directed_cycle(3)}, {directed_path(2)}, 4, VerifyOptions{kDefaultBudget, jobs, {}});
    CHECK(duality_report_to_json(par) == duality_report_to_json(base));
  }
}

TEST_CASE("shadow dualities") {
  auto three = k_coloring_family(3);
  CHECK(verify_shadow_duality(three, {complete_graph(3)}, 5).status == DualityStatus::verified);
  CHECK(verify_shadow_duality(three, {complete_graph(2)}, 5).status == DualityStatus::counterexample);

  ForbFamily none(ColorSet::numbered(1), Signature::digraph(true), {});
  CHECK(verify_shadow_duality(none, {looped_vertex(true)}, 3).status == DualityStatus::verified);

  SUBCASE("triangle-free graphs have no single template with at most 4 vertices") {
    const ColorSet one = ColorSet::numbered(1);
    ForbFamily tri(one, Signature::digraph(true), {Lift::single(complete_graph(3), one, {0, 0, 0})});
    std::size_t candidates = 0;
    for (const auto& d : enumerate_structures(Signature::digraph(true), 4)) {
      auto r = verify_shadow_duality(tri, {d}, 5);
      CHECK(r.status == DualityStatus::counterexample);
      ++candidates;
    }
    CHECK(candidates == 1 + 2 + 6 + 20 + 90);
  }
}

TEST_CASE("lifted dualities transfer to shadows") {
  const ColorSet two = ColorSet::numbered(2);
  std::vector<ForbFamily> families{k_coloring_family(2), k_coloring_family(3), local_coloring_family(2, 3)};
  // Directed: no arc from colour 1 to colour 2 and no monochromatic 2-path.
  families.emplace_back(two, Signature::digraph(),
                        std::vector<Lift>{Lift::single(directed_path(1), two, {0, 1}),
                                          Lift::single(directed_path(2), two, {0, 0, 0}),
                                          Lift::single(directed_path(2), two, {1, 1, 1})});
  // Directed: colour 2 vertices are sinks.
  families.emplace_back(two, Signature::digraph(), std::vector<Lift>{Lift::single(directed_path(1), two, {1, 0}),
                                                                     Lift::single(directed_path(1), two, {1, 1})});
  for (const auto& f : families) {
    const std::size_t n = f.base_signature[0].symmetric ? 4 : 3;
    auto lifted = dual_set_of_family(f.extended_signature(), structures(f), lifted_bounds(f, n));
    auto lifted_report = verify_lifted_duality(f, lifted.duals, n);
    REQUIRE(lifted_report.status == DualityStatus::verified);
    auto shadows = shadow_cores(lifted.duals, f.base_signature.size());
    CHECK(verify_shadow_duality(f, shadows, n).status == DualityStatus::verified);
  }
}

TEST_CASE("report JSON") {
  auto bad = verify_duality({directed_cycle(3)}, {directed_path(1)}, 4);
  auto text = duality_report_to_json(bad).dump();
  auto back = duality_report_from_json(parse_json(text));
  CHECK(duality_report_to_json(back).dump() == text);
  CHECK(text.rfind(R"({"status":"counterexample","verified_to":)", 0) == 0);

  auto cand = dual_of_tree(directed_path(2));
  auto ctext = dual_candidate_to_json(cand).dump();
  CHECK(ctext.rfind(R"({"provenance":"constructed","verified_to":4,"duals":[)", 0) == 0);
  auto cback = dual_candidate_from_json(parse_json(ctext));
  CHECK(cback.duals == cand.duals);

  CHECK_THROWS_AS(duality_report_from_json(parse_json(R"({"status":"fine","verified_to":1})")), FormatError);
  CHECK_THROWS_AS(duality_report_from_json(parse_json(R"({"status":"counterexample","verified_to":1})")), FormatError);
  CHECK_THROWS_AS(dual_candidate_from_json(parse_json(R"({"provenance":"guessed","verified_to":1,"duals":[]})")),
                  FormatError);
}
