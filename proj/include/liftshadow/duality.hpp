#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "liftshadow/hom.hpp"
#include "liftshadow/io.hpp"
#include "liftshadow/lifts.hpp"
#include "liftshadow/structure.hpp"

namespace liftshadow {

struct CspWitness {
  std::size_t dual = 0;  // index into the template list
  Hom hom;
};

/// First template (in list order) that A maps to.
std::optional<CspWitness> csp_witness(const Structure& a, const std::vector<Structure>& templates,
                                      std::uint64_t budget = kDefaultBudget);
inline bool csp_member(const Structure& a, const std::vector<Structure>& templates,
                       std::uint64_t budget = kDefaultBudget) {
  return csp_witness(a, templates, budget).has_value();
}

enum class DualityStatus { verified, counterexample, budget_exceeded };
enum class CounterexampleSide {
  forb_not_csp,  // avoids every forbidden structure but maps to no template
  csp_not_forb,  // maps to a template but admits a forbidden structure
};

struct DualityReport {
  DualityStatus status = DualityStatus::verified;
  /// Every structure with at most this many elements was checked. -1 when
  /// not even the empty structure was.
  long verified_to = -1;
  std::optional<Structure> counterexample;
  std::optional<CounterexampleSide> side;
};

struct VerifyOptions {
  std::uint64_t budget = kDefaultBudget;  // per homomorphism search
  unsigned jobs = 1;
  /// Restricts the sweep to structures covered by these unary relations.
  std::vector<std::size_t> cover_relations;
};

/// Compares Forb(forbidden) with CSP(templates) on every structure over
/// `sig` with at most n_max elements, up to isomorphism, in enumeration
/// order; reports the first disagreement.
DualityReport verify_duality(const Signature& sig, const std::vector<Structure>& forbidden,
                             const std::vector<Structure>& templates, std::size_t n_max,
                             const VerifyOptions& options = {});
/// Signature taken from the first structure of either list.
DualityReport verify_duality(const std::vector<Structure>& forbidden, const std::vector<Structure>& templates,
                             std::size_t n_max, const VerifyOptions& options = {});
/// Same comparison on covering lifts only, with the family's variant.
DualityReport verify_lifted_duality(const ForbFamily& family, const std::vector<Structure>& templates,
                                    std::size_t n_max, const VerifyOptions& options = {});
/// Compares shadow membership in the family with CSP(templates) on every
/// structure over the base signature with at most n_max elements.
DualityReport verify_shadow_duality(const ForbFamily& family, const std::vector<Structure>& templates,
                                    std::size_t n_max, const VerifyOptions& options = {});

enum class DualProvenance { constructed, searched };

struct DualCandidate {
  std::vector<Structure> duals;  // cores in canonical form, canonical order
  long verified_to = -1;
  DualProvenance provenance = DualProvenance::constructed;
};

struct DualBounds {
  std::size_t n_max = 4;               // exhaustive verification bound
  std::size_t search_max = 5;          // largest universe tried by the searched provenance
  DualProvenance provenance = DualProvenance::constructed;
  VerifyOptions verify;                // cover_relations also restrict templates to covered elements
};

/// Dual of a tree built directly: elements are the maps sending each
/// element of T to a block containing it; a tuple of maps is related unless
/// some tuple t of T has every coordinate pointing at t's own block.
Structure tree_dual_construction(const Structure& tree);

/// The single dual of a tree, as a core, verified to bounds.n_max.
/// Throws invalid_argument unless T is a tree and BudgetExceeded when the
/// searched provenance finds no stable candidate within search_max.
DualCandidate dual_of_tree(const Structure& tree, const DualBounds& bounds = {});

/// Duals of a family of forests: one product per choice of a component dual
/// for every forest, reduced to hom-maximal cores.
DualCandidate dual_set_of_family(const std::vector<Structure>& forests, const DualBounds& bounds = {});
/// Variant for an empty family, whose signature cannot be read off.
DualCandidate dual_set_of_family(const Signature& sig, const std::vector<Structure>& forests,
                                 const DualBounds& bounds = {});

/// Cores of the list, minus any core that maps to a different one, with one
/// representative per hom-equivalence class; canonical order.
std::vector<Structure> hom_maximal_cores(const std::vector<Structure>& list, std::uint64_t budget = kDefaultBudget);

std::string_view to_string(DualityStatus s);
std::string_view to_string(CounterexampleSide s);
std::string_view to_string(DualProvenance p);

Json duality_report_to_json(const DualityReport& r);
DualityReport duality_report_from_json(const Json& j);
Json dual_candidate_to_json(const DualCandidate& d);
DualCandidate dual_candidate_from_json(const Json& j);

}  // namespace liftshadow
