#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "liftshadow/hom.hpp"
#include "liftshadow/io.hpp"
#include "liftshadow/structure.hpp"

namespace liftshadow {

/// Ordered set of colour names.
class ColorSet {
 public:
  ColorSet() = default;
  explicit ColorSet(std::vector<std::string> colors);
  /// Colours "1".."k".
  static ColorSet numbered(std::size_t k);

  std::size_t size() const { return colors_.size(); }
  const std::string& operator[](std::size_t i) const { return colors_[i]; }
  const std::vector<std::string>& names() const { return colors_; }
  std::optional<std::size_t> find(std::string_view name) const;

  bool operator==(const ColorSet&) const = default;

 private:
  std::vector<std::string> colors_;
};

/// Base signature followed by one unary relation "C[name]" per colour.
Signature lift_signature(const Signature& base, const ColorSet& gamma);

/// A covering monadic lift: a structure over lift_signature(base, gamma) in
/// which every element carries at least one colour.
class Lift {
 public:
  /// assign[v] lists the colour indices of v.
  Lift(const Structure& base, ColorSet gamma, const std::vector<std::vector<std::size_t>>& assign);
  /// One colour per element.
  static Lift single(const Structure& base, ColorSet gamma, const std::vector<std::size_t>& coloring);
  /// Wraps a structure over the extended signature; checks covering.
  static Lift from_extended(Structure extended, ColorSet gamma);

  const Structure& structure() const { return ext_; }
  const ColorSet& colors() const { return gamma_; }
  const Signature& base_signature() const { return base_sig_; }
  std::size_t size() const { return ext_.size(); }
  std::vector<std::size_t> colors_of(Element v) const;
  bool has_color(Element v, std::size_t color) const;

  bool operator==(const Lift&) const = default;

 private:
  Lift(Structure ext, ColorSet gamma, Signature base_sig);

  Structure ext_;
  ColorSet gamma_;
  Signature base_sig_;
};

/// The forgetful map: drops the colour relations.
Structure shadow(const Lift& lift);
/// Shadow of any structure whose signature starts with `base_relations` relations.
Structure shadow(const Structure& extended, std::size_t base_relations);

/// Colours each a in A with the colours of f(a). Throws invalid_argument
/// when f is not a homomorphism A -> shadow(b).
Lift pullback_lift(const Hom& f, const Structure& a, const Lift& b);

struct ForbFamily {
  ColorSet colors;
  Signature base_signature;
  std::vector<Lift> members;
  HomVariant variant = HomVariant::standard;

  ForbFamily() = default;
  ForbFamily(ColorSet colors, Signature base_signature, std::vector<Lift> members,
             HomVariant variant = HomVariant::standard);

  Signature extended_signature() const { return lift_signature(base_signature, colors); }
};

struct ForbViolation {
  std::size_t member = 0;
  Hom witness;  // member -> lift
};

/// nullopt iff no member maps (with the family's variant) into `lift`.
std::optional<ForbViolation> forb_violation(const Lift& lift, const ForbFamily& family,
                                            std::uint64_t budget = kDefaultBudget);
/// Same test on a structure over the extended signature, covering or not.
std::optional<ForbViolation> forb_violation(const Structure& extended, const ForbFamily& family,
                                            std::uint64_t budget = kDefaultBudget);
inline bool forb_member(const Lift& lift, const ForbFamily& family, std::uint64_t budget = kDefaultBudget) {
  return !forb_violation(lift, family, budget).has_value();
}

/// Searches one colour per element (colour indices) such that the lift lies
/// in Forb(family). Partial assignments are abandoned as soon as some member
/// maps into the coloured prefix. `budget` bounds the colour assignments
/// tried; each member test has its own hom budget of the same size.
std::optional<std::vector<std::size_t>> shadow_member(const Structure& a, const ForbFamily& family,
                                                      std::uint64_t budget = kDefaultBudget);

/// Lift JSON: Structure JSON of the shadow plus
///   "colors":{"gamma":["1","2"],"assign":[["1"],["1","2"]]}.
Json lift_to_json(const Lift& lift);
Lift lift_from_json(const Json& j);
/// A family is a JSON array of Lift JSON objects (gamma and signature taken
/// from the members, variant from the argument) or an object
///   {"gamma":[...],"signature":[...],"variant":"standard","members":[...]}.
Json family_to_json(const ForbFamily& family);
ForbFamily family_from_json(const Json& j, HomVariant variant = HomVariant::standard);

}  // namespace liftshadow
