#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "liftshadow/io.hpp"
#include "liftshadow/structure.hpp"

namespace liftshadow {

enum class HomVariant { standard, injective, full };

std::string_view to_string(HomVariant v);
HomVariant parse_variant(std::string_view name);

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// A map from source elements to target elements. Which structures it
/// relates is up to the caller; is_homomorphism checks it against a pair.
struct Hom {
  std::vector<Element> map;
  HomVariant variant = HomVariant::standard;

  bool operator==(const Hom&) const = default;
};

/// Checks the variant's conditions. Full homomorphisms must reflect every
/// non-unary relation; unary relations are only preserved.
bool is_homomorphism(const Structure& source, const Structure& target, std::span<const Element> map,
                     HomVariant variant = HomVariant::standard);
inline bool is_homomorphism(const Structure& source, const Structure& target, const Hom& h) {
  return is_homomorphism(source, target, h.map, h.variant);
}

/// (second ∘ first): source of `first` to target of `second`.
std::vector<Element> compose(std::span<const Element> first, std::span<const Element> second);

struct HomSearchOptions {
  HomVariant variant = HomVariant::standard;
  std::uint64_t budget = kDefaultBudget;
  /// Target elements that must stay outside the image.
  std::vector<Element> forbidden_targets;
};

/// Backtracking search with forward checking; next element is the one with
/// the fewest candidates, ties broken by tuple-degree then index. Returns
/// nullopt when no map exists and throws BudgetExceeded when the search
/// visits more than `budget` assignments.
std::optional<Hom> find_hom(const Structure& source, const Structure& target, const HomSearchOptions& options);
std::optional<Hom> find_hom(const Structure& source, const Structure& target, HomVariant variant = HomVariant::standard,
                            std::uint64_t budget = kDefaultBudget);

inline bool hom_exists(const Structure& source, const Structure& target, std::uint64_t budget = kDefaultBudget) {
  return find_hom(source, target, HomVariant::standard, budget).has_value();
}

bool hom_equivalent(const Structure& a, const Structure& b, std::uint64_t budget = kDefaultBudget);

struct CoreResult {
  Structure core;                 // canonical form
  std::vector<Element> elements;  // elements[i]: element of the input that became core element i
  Hom retraction;                 // input -> core, sends elements[i] to i
};

/// Folds away non-surjective endomorphisms until none is left. The result
/// is the core, unique up to isomorphism, reported in canonical form.
CoreResult core(const Structure& s, std::uint64_t budget = kDefaultBudget);
bool is_core(const Structure& s, std::uint64_t budget = kDefaultBudget);

/// {"variant":"standard","map":[...]}
Json hom_to_json(const Hom& h);
Hom hom_from_json(const Json& j);
/// {"core":<Structure JSON>,"elements":[...],"retraction":[...]}
Json core_result_to_json(const CoreResult& c);
CoreResult core_result_from_json(const Json& j);

}  // namespace liftshadow
