#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "liftshadow/duality.hpp"
#include "liftshadow/incidence.hpp"
#include "liftshadow/lifts.hpp"

namespace liftshadow {

enum class Outcome { csp, not_finite_union_csp, inconclusive };

struct CyclicWitness {
  std::size_t member = 0;  // index into minimal_family
  IncidenceCycle cycle;
};

struct ClassificationReport {
  Outcome outcome = Outcome::inconclusive;
  std::vector<Lift> minimal_family;
  std::optional<DualCandidate> duals;  // over the base signature
  std::optional<CyclicWitness> cyclic_witness;
};

struct ClassifyBounds {
  std::size_t n_max = 4;  // shadow verification bound
  std::uint64_t budget = kDefaultBudget;
  unsigned jobs = 1;
};

/// Lift cores of the members, without members above another member and
/// with one member per hom-equivalence class, in canonical order.
std::vector<Lift> normalize_family(const ForbFamily& family, std::uint64_t budget = kDefaultBudget);

/// csp when every normalized member is a forest (with shadow duals verified
/// to bounds.n_max), not_finite_union_csp with a cycle from the first
/// member that has one, inconclusive when a budget runs out.
ClassificationReport classify(const ForbFamily& family, const ClassifyBounds& bounds = {});

struct RefuteBounds {
  std::size_t search_max = 6;  // largest universe searched directly
  std::uint64_t budget = kDefaultBudget;
  unsigned jobs = 1;
  std::uint64_t seed = 0;      // for the sparse step
};

struct Refutation {
  Structure counterexample;
  CounterexampleSide side = CounterexampleSide::forb_not_csp;
  bool sparse_step = false;  // found by sparsifying a structure from the reduced family
};

/// A structure on exactly one side of shadow-Forb(family) versus
/// CSP(templates), or nullopt when neither the direct search nor the
/// sparse step finds one. Throws invalid_argument when every normalized
/// member is a forest.
std::optional<Refutation> refute_dual(const ForbFamily& family, const std::vector<Structure>& templates,
                                      const RefuteBounds& bounds = {});

std::string_view to_string(Outcome o);

Json cycle_to_json(const IncidenceCycle& c, const Signature& sig);
IncidenceCycle cycle_from_json(const Json& j, const Signature& sig);
Json classification_to_json(const ClassificationReport& r);
ClassificationReport classification_from_json(const Json& j);

}  // namespace liftshadow
