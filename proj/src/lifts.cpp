#include "liftshadow/lifts.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "liftshadow/errors.hpp"

namespace liftshadow {

ColorSet::ColorSet(std::vector<std::string> colors) : colors_(std::move(colors)) {
  if (colors_.empty()) throw std::invalid_argument("colour set must be nonempty");
  std::set<std::string> seen(colors_.begin(), colors_.end());
  if (seen.size() != colors_.size()) throw std::invalid_argument("duplicate colour name");
}

ColorSet ColorSet::numbered(std::size_t k) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= k; ++i) names.push_back(std::to_string(i));
  return ColorSet(std::move(names));
}

std::optional<std::size_t> ColorSet::find(std::string_view name) const {
  for (std::size_t i = 0; i < colors_.size(); ++i)
    if (colors_[i] == name) return i;
  return std::nullopt;
}

Signature lift_signature(const Signature& base, const ColorSet& gamma) {
  std::vector<Relation> extra;
  for (const auto& c : gamma.names()) extra.push_back({"C[" + c + "]", 1, false});
  return base.extended(extra);
}

namespace {

Structure colored(const Structure& base, const Signature& ext, const std::vector<std::vector<std::size_t>>& assign) {
  const std::size_t nb = base.signature().size();
  StructureBuilder b(ext, base.size());
  for (std::size_t r = 0; r < nb; ++r)
    for (auto t : base.tuples(r)) b.add(r, t);
  for (Element v = 0; v < assign.size(); ++v)
    for (auto c : assign[v]) {
      if (c >= ext.size() - nb) throw std::invalid_argument("colour index out of range");
      b.add(nb + c, {v});
    }
  return std::move(b).build();
}

}  // namespace

Lift::Lift(Structure ext, ColorSet gamma, Signature base_sig)
    : ext_(std::move(ext)), gamma_(std::move(gamma)), base_sig_(std::move(base_sig)) {
  const std::size_t nb = base_sig_.size();
  std::vector<bool> covered(ext_.size(), false);
  for (std::size_t c = 0; c < gamma_.size(); ++c)
    for (auto t : ext_.tuples(nb + c)) covered[t[0]] = true;
  for (Element v = 0; v < ext_.size(); ++v)
    if (!covered[v]) throw std::invalid_argument("lift is not covering: element " + std::to_string(v) + " has no colour");
}

Lift::Lift(const Structure& base, ColorSet gamma, const std::vector<std::vector<std::size_t>>& assign)
    : Lift(colored(base, lift_signature(base.signature(), gamma), assign), gamma, base.signature()) {
  if (assign.size() != base.size()) throw std::invalid_argument("colour assignment size differs from universe");
}

Lift Lift::single(const Structure& base, ColorSet gamma, const std::vector<std::size_t>& coloring) {
  std::vector<std::vector<std::size_t>> assign;
  for (auto c : coloring) assign.push_back({c});
  return Lift(base, std::move(gamma), assign);
}

Lift Lift::from_extended(Structure extended, ColorSet gamma) {
  const auto& sig = extended.signature();
  if (sig.size() < gamma.size()) throw SignatureMismatch("lift: signature lacks colour relations");
  Signature base = sig.prefix(sig.size() - gamma.size());
  require_compatible(lift_signature(base, gamma), sig, "lift");
  return Lift(std::move(extended), std::move(gamma), std::move(base));
}

std::vector<std::size_t> Lift::colors_of(Element v) const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < gamma_.size(); ++c)
    if (has_color(v, c)) out.push_back(c);
  return out;
}

bool Lift::has_color(Element v, std::size_t color) const { return ext_.contains(base_sig_.size() + color, {v}); }

Structure shadow(const Structure& extended, std::size_t base_relations) {
  Signature base = extended.signature().prefix(base_relations);
  StructureBuilder b(base, extended.size());
  for (std::size_t r = 0; r < base_relations; ++r)
    for (auto t : extended.tuples(r)) b.add(r, t);
  return std::move(b).build();
}

Structure shadow(const Lift& lift) { return shadow(lift.structure(), lift.base_signature().size()); }

Lift pullback_lift(const Hom& f, const Structure& a, const Lift& b) {
  require_compatible(a.signature(), b.base_signature(), "pullback_lift");
  if (f.map.size() != a.size() || !is_homomorphism(a, shadow(b), f.map))
    throw std::invalid_argument("pullback_lift: map is not a homomorphism to the shadow");
  std::vector<std::vector<std::size_t>> assign;
  for (auto img : f.map) assign.push_back(b.colors_of(img));
  return Lift(a, b.colors(), assign);
}

ForbFamily::ForbFamily(ColorSet colors_, Signature base_signature_, std::vector<Lift> members_, HomVariant variant_)
    : colors(std::move(colors_)), base_signature(std::move(base_signature_)), members(std::move(members_)),
      variant(variant_) {
  for (const auto& m : members) {
    if (m.colors() != colors) throw SignatureMismatch("family member has a different colour set");
    require_compatible(m.base_signature(), base_signature, "family member");
  }
}

std::optional<ForbViolation> forb_violation(const Structure& extended, const ForbFamily& family, std::uint64_t budget) {
  require_compatible(extended.signature(), family.extended_signature(), "forb_member");
  for (std::size_t i = 0; i < family.members.size(); ++i) {
    auto h = find_hom(family.members[i].structure(), extended, family.variant, budget);
    if (h) return ForbViolation{i, std::move(*h)};
  }
  return std::nullopt;
}

std::optional<ForbViolation> forb_violation(const Lift& lift, const ForbFamily& family, std::uint64_t budget) {
  if (lift.colors() != family.colors) throw SignatureMismatch("forb_member: colour sets differ");
  return forb_violation(lift.structure(), family, budget);
}

namespace {

// Elements in an order that keeps each prefix as connected as possible.
std::vector<Element> search_order(const Structure& a) {
  std::vector<std::vector<Element>> adj(a.size());
  for (std::size_t r = 0; r < a.signature().size(); ++r)
    for (auto t : a.tuples(r))
      for (auto x : t)
        for (auto y : t)
          if (x != y) adj[x].push_back(y);
  std::vector<std::size_t> placed_nbrs(a.size(), 0), degree(a.size());
  for (Element v = 0; v < a.size(); ++v) degree[v] = adj[v].size();
  std::vector<bool> placed(a.size(), false);
  std::vector<Element> order;
  for (std::size_t step = 0; step < a.size(); ++step) {
    std::optional<Element> best;
    for (Element v = 0; v < a.size(); ++v) {
      if (placed[v]) continue;
      if (!best || placed_nbrs[v] > placed_nbrs[*best] ||
          (placed_nbrs[v] == placed_nbrs[*best] && degree[v] > degree[*best]))
        best = v;
    }
    placed[*best] = true;
    order.push_back(*best);
    for (auto u : adj[*best]) ++placed_nbrs[u];
  }
  return order;
}

class ColorSearch {
 public:
  ColorSearch(const Structure& a, const ForbFamily& family, std::uint64_t budget)
      : a_(a), family_(family), budget_(budget), ext_(family.extended_signature()), order_(search_order(a)) {
    pos_.assign(a.size(), 0);
    for (std::size_t i = 0; i < order_.size(); ++i) pos_[order_[i]] = static_cast<Element>(i);
    coloring_.assign(a.size(), 0);
  }

  std::optional<std::vector<std::size_t>> run() {
    if (!extend(0)) return std::nullopt;
    return coloring_;
  }

 private:
  bool extend(std::size_t depth) {
    if (depth == order_.size()) return true;
    for (std::size_t c = 0; c < family_.colors.size(); ++c) {
      if (++steps_ > budget_) throw BudgetExceeded("shadow_member: colour search budget exceeded");
      coloring_[order_[depth]] = c;
      if (prefix_ok(depth + 1) && extend(depth + 1)) return true;
    }
    return false;
  }

  // True when no member maps into the coloured substructure induced on the
  // first `d` elements of the order.
  bool prefix_ok(std::size_t d) const {
    const std::size_t nb = a_.signature().size();
    StructureBuilder b(ext_, d);
    std::vector<Element> img;
    for (std::size_t r = 0; r < nb; ++r)
      for (auto t : a_.tuples(r)) {
        img.clear();
        bool inside = true;
        for (auto x : t) {
          if (pos_[x] >= d) { inside = false; break; }
          img.push_back(pos_[x]);
        }
        if (inside) b.add(r, img);
      }
    for (Element i = 0; i < d; ++i) b.add(nb + coloring_[order_[i]], {i});
    return !forb_violation(std::move(b).build(), family_, budget_).has_value();
  }

  const Structure& a_;
  const ForbFamily& family_;
  std::uint64_t budget_;
  std::uint64_t steps_ = 0;
  Signature ext_;
  std::vector<Element> order_;
  std::vector<Element> pos_;
  std::vector<std::size_t> coloring_;
};

}  // namespace

std::optional<std::vector<std::size_t>> shadow_member(const Structure& a, const ForbFamily& family, std::uint64_t budget) {
  require_compatible(a.signature(), family.base_signature, "shadow_member");
  if (a.size() == 0) {
    if (forb_violation(Structure(family.extended_signature(), 0), family, budget)) return std::nullopt;
    return std::vector<std::size_t>{};
  }
  return ColorSearch(a, family, budget).run();
}

Json lift_to_json(const Lift& lift) {
  Json out = structure_to_json(shadow(lift));
  Json assign = Json::array();
  for (Element v = 0; v < lift.size(); ++v) {
    Json names = Json::array();
    for (auto c : lift.colors_of(v)) names.push_back(lift.colors()[c]);
    assign.push_back(std::move(names));
  }
  out["colors"] = Json{{"gamma", lift.colors().names()}, {"assign", std::move(assign)}};
  return out;
}

Lift lift_from_json(const Json& j) {
  require_keys(j, {"signature", "universe", "relations", "colors"}, "lift");
  if (!j.contains("colors")) throw FormatError("lift: missing 'colors'");
  const Json& colors = j["colors"];
  require_keys(colors, {"gamma", "assign"}, "lift colors");
  if (!colors.contains("gamma") || !colors["gamma"].is_array() || !colors.contains("assign") ||
      !colors["assign"].is_array())
    throw FormatError("lift colors: 'gamma' and 'assign' must be arrays");
  Json base_json = j;
  base_json.erase("colors");
  Structure base = structure_from_json(base_json);
  std::vector<std::string> names;
  for (const auto& c : colors["gamma"]) {
    if (!c.is_string()) throw FormatError("lift colors: colour names must be strings");
    names.push_back(c.get<std::string>());
  }
  ColorSet gamma;
  try {
    gamma = ColorSet(names);
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("lift colors: ") + e.what());
  }
  if (colors["assign"].size() != base.size()) throw FormatError("lift colors: 'assign' needs one entry per element");
  std::vector<std::vector<std::size_t>> assign;
  for (const auto& entry : colors["assign"]) {
    if (!entry.is_array()) throw FormatError("lift colors: each 'assign' entry must be an array");
    auto& cs = assign.emplace_back();
    for (const auto& c : entry) {
      if (!c.is_string()) throw FormatError("lift colors: colour names must be strings");
      auto idx = gamma.find(c.get<std::string>());
      if (!idx) throw FormatError("lift colors: unknown colour '" + c.get<std::string>() + "'");
      if (std::find(cs.begin(), cs.end(), *idx) != cs.end()) throw FormatError("lift colors: repeated colour");
      cs.push_back(*idx);
    }
  }
  try {
    return Lift(base, gamma, assign);
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("lift: ") + e.what());
  }
}

Json family_to_json(const ForbFamily& family) {
  Json out = Json::array();
  for (const auto& m : family.members) out.push_back(lift_to_json(m));
  return out;
}

ForbFamily family_from_json(const Json& j, HomVariant variant) {
  std::vector<Lift> members;
  auto read_members = [&](const Json& arr) {
    if (!arr.is_array()) throw FormatError("family: 'members' must be an array");
    for (const auto& m : arr) members.push_back(lift_from_json(m));
  };
  if (j.is_array()) {
    read_members(j);
    if (members.empty()) throw FormatError("family: an empty array carries no colour set; use the object form");
    ColorSet gamma = members.front().colors();
    Signature sig = members.front().base_signature();
    try {
      return ForbFamily(gamma, sig, std::move(members), variant);
    } catch (const std::invalid_argument& e) {
      throw FormatError(std::string("family: ") + e.what());
    }
  }
  require_keys(j, {"gamma", "signature", "variant", "members"}, "family");
  if (!j.contains("gamma") || !j.contains("signature")) throw FormatError("family: missing 'gamma' or 'signature'");
  std::vector<std::string> names;
  for (const auto& c : j["gamma"]) {
    if (!c.is_string()) throw FormatError("family: colour names must be strings");
    names.push_back(c.get<std::string>());
  }
  if (j.contains("variant")) {
    if (!j["variant"].is_string()) throw FormatError("family: 'variant' must be a string");
    variant = parse_variant(j["variant"].get<std::string>());
  }
  if (j.contains("members")) read_members(j["members"]);
  try {
    return ForbFamily(ColorSet(names), signature_from_json(j["signature"]), std::move(members), variant);
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("family: ") + e.what());
  }
}

}  // namespace liftshadow
