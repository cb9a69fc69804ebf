#include "liftshadow/classify.hpp"

#include <algorithm>
#include <stdexcept>

#include "liftshadow/canonical.hpp"
#include "liftshadow/enumerate.hpp"
#include "liftshadow/errors.hpp"
#include "liftshadow/sparse.hpp"
#include "parallel.hpp"

namespace liftshadow {

std::vector<Lift> normalize_family(const ForbFamily& family, std::uint64_t budget) {
  std::vector<Structure> cores;
  for (const auto& m : family.members) cores.push_back(core(m.structure(), budget).core);
  std::sort(cores.begin(), cores.end(), canonical_less);
  cores.erase(std::unique(cores.begin(), cores.end()), cores.end());
  std::vector<Lift> out;
  for (std::size_t i = 0; i < cores.size(); ++i) {
    bool above = false;
    for (std::size_t j = 0; j < cores.size() && !above; ++j)
      above = j != i && find_hom(cores[j], cores[i], HomVariant::standard, budget).has_value();
    if (!above) out.push_back(Lift::from_extended(cores[i], family.colors));
  }
  return out;
}

namespace {

void require_standard(const ForbFamily& family, std::string_view what) {
  if (family.variant != HomVariant::standard)
    throw std::invalid_argument(std::string(what) + ": only defined for standard homomorphisms");
}

std::vector<std::size_t> color_relations(const ForbFamily& family) {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < family.colors.size(); ++c) out.push_back(family.base_signature.size() + c);
  return out;
}

}  // namespace

ClassificationReport classify(const ForbFamily& family, const ClassifyBounds& bounds) {
  require_standard(family, "classify");
  ClassificationReport report;
  try {
    report.minimal_family = normalize_family(family, bounds.budget);
    for (std::size_t i = 0; i < report.minimal_family.size(); ++i) {
      auto cycle = shortest_cycle(report.minimal_family[i].structure());
      if (cycle) {
        report.outcome = Outcome::not_finite_union_csp;
        report.cyclic_witness = CyclicWitness{i, std::move(*cycle)};
        return report;
      }
    }
    // Lifted duals over covering lifts, then their shadows. The lifted
    // duality is only certified on the smallest lifts; the shadow duality
    // below is what the report claims.
    DualBounds lifted;
    lifted.n_max = std::min<std::size_t>(bounds.n_max, 2);
    lifted.verify = VerifyOptions{bounds.budget, bounds.jobs, color_relations(family)};
    std::vector<Structure> members;
    for (const auto& m : report.minimal_family) members.push_back(m.structure());
    auto lifted_duals = dual_set_of_family(family.extended_signature(), members, lifted);
    std::vector<Structure> shadows;
    for (const auto& d : lifted_duals.duals) shadows.push_back(shadow(d, family.base_signature.size()));
    shadows = hom_maximal_cores(shadows, bounds.budget);

    auto check = verify_shadow_duality(family, shadows, bounds.n_max, VerifyOptions{bounds.budget, bounds.jobs, {}});
    if (check.status == DualityStatus::budget_exceeded) {
      report.outcome = Outcome::inconclusive;
      return report;
    }
    if (check.status == DualityStatus::counterexample)
      throw std::logic_error("shadow duals fail on a structure with " + std::to_string(check.counterexample->size()) +
                             " elements");
    report.outcome = Outcome::csp;
    report.duals = DualCandidate{std::move(shadows), check.verified_to, DualProvenance::constructed};
  } catch (const BudgetExceeded&) {
    report.outcome = Outcome::inconclusive;
    report.duals.reset();
    report.cyclic_witness.reset();
  }
  return report;
}

namespace {

std::optional<Structure> first_structure(const Signature& sig, std::size_t n_max, unsigned jobs,
                                         const std::function<bool(const Structure&)>& pred) {
  StructureEnumerator en(sig);
  for (std::size_t n = 0; n <= n_max; ++n) {
    auto level = en.next_level();
    auto hit = detail::first_hit(level.size(), jobs, [&](std::size_t i) { return pred(level[i]); });
    if (hit) return level[*hit];
  }
  return std::nullopt;
}

}  // namespace

std::optional<Refutation> refute_dual(const ForbFamily& family, const std::vector<Structure>& templates,
                                      const RefuteBounds& bounds) {
  require_standard(family, "refute_dual");
  for (const auto& d : templates) require_compatible(family.base_signature, d.signature(), "refute_dual");
  const auto minimal = normalize_family(family, bounds.budget);
  std::optional<std::size_t> cyclic;
  for (std::size_t i = 0; i < minimal.size() && !cyclic; ++i)
    if (!incidence_analysis(minimal[i].structure()).is_forest) cyclic = i;
  if (!cyclic) throw std::invalid_argument("refute_dual: every minimal member is a forest");

  try {
    auto in_forb = [&](const Structure& s) { return shadow_member(s, family, bounds.budget).has_value(); };
    auto in_csp = [&](const Structure& s) { return csp_member(s, templates, bounds.budget); };
    auto direct = first_structure(family.base_signature, bounds.search_max, bounds.jobs,
                                  [&](const Structure& s) { return in_forb(s) != in_csp(s); });
    if (direct) {
      const auto side = in_forb(*direct) ? CounterexampleSide::forb_not_csp : CounterexampleSide::csp_not_forb;
      return Refutation{std::move(*direct), side, false};
    }

    // Drop the cyclic member, take a structure admitted only without it, and
    // raise its girth past every member so the dropped member cannot map in.
    std::vector<Lift> rest;
    std::size_t largest = 1;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      largest = std::max(largest, minimal[i].size());
      if (i != *cyclic) rest.push_back(minimal[i]);
    }
    const ForbFamily reduced(family.colors, family.base_signature, rest, family.variant);
    auto s = first_structure(family.base_signature, bounds.search_max, bounds.jobs, [&](const Structure& x) {
      return shadow_member(x, reduced, bounds.budget).has_value() && !in_forb(x);
    });
    if (!s) return std::nullopt;
    SparseRequest req;
    req.a = *s;
    req.k = 1;
    for (const auto& d : templates) req.k = std::max(req.k, d.size());
    req.girth = largest + 1;
    req.seed = bounds.seed;
    req.budget = bounds.budget;
    req.jobs = bounds.jobs;
    SparseResult sparse = sparsify(req);
    const bool f = in_forb(sparse.b), c = in_csp(sparse.b);
    if (f == c) return std::nullopt;
    return Refutation{std::move(sparse.b), f ? CounterexampleSide::forb_not_csp : CounterexampleSide::csp_not_forb,
                      true};
  } catch (const BudgetExceeded&) {
    return std::nullopt;
  } catch (const SparseFailure&) {
    return std::nullopt;
  }
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::csp: return "csp";
    case Outcome::not_finite_union_csp: return "not_finite_union_csp";
    case Outcome::inconclusive: return "inconclusive";
  }
  return "";
}

Json cycle_to_json(const IncidenceCycle& c, const Signature& sig) {
  Json blocks = Json::array();
  for (const auto& b : c.blocks) blocks.push_back(Json{{"relation", sig[b.relation].name}, {"tuple", b.tuple}});
  Json out;
  out["elements"] = c.elements;
  out["blocks"] = std::move(blocks);
  return out;
}

IncidenceCycle cycle_from_json(const Json& j, const Signature& sig) {
  require_keys(j, {"elements", "blocks"}, "cycle");
  IncidenceCycle c;
  try {
    c.elements = j.at("elements").get<std::vector<Element>>();
    for (const auto& b : j.at("blocks")) {
      require_keys(b, {"relation", "tuple"}, "cycle block");
      auto r = sig.find(b.at("relation").get<std::string>());
      if (!r) throw FormatError("cycle block: unknown relation");
      c.blocks.push_back(Block{*r, b.at("tuple").get<std::vector<Element>>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("cycle: ") + e.what());
  }
  if (c.elements.size() != c.blocks.size()) throw FormatError("cycle: needs as many elements as blocks");
  return c;
}

Json classification_to_json(const ClassificationReport& r) {
  Json out;
  out["outcome"] = to_string(r.outcome);
  Json family = Json::array();
  for (const auto& m : r.minimal_family) family.push_back(lift_to_json(m));
  out["minimal_family"] = std::move(family);
  if (r.duals) out["duals"] = dual_candidate_to_json(*r.duals);
  if (r.cyclic_witness) {
    const auto& sig = r.minimal_family.at(r.cyclic_witness->member).structure().signature();
    out["cyclic_witness"] = Json{{"member", r.cyclic_witness->member}, {"cycle", cycle_to_json(r.cyclic_witness->cycle, sig)}};
  }
  return out;
}

ClassificationReport classification_from_json(const Json& j) {
  require_keys(j, {"outcome", "minimal_family", "duals", "cyclic_witness"}, "classification");
  ClassificationReport r;
  if (!j.contains("outcome") || !j["outcome"].is_string() || !j.contains("minimal_family") ||
      !j["minimal_family"].is_array())
    throw FormatError("classification: needs 'outcome' and 'minimal_family'");
  const auto o = j["outcome"].get<std::string>();
  if (o == "csp") r.outcome = Outcome::csp;
  else if (o == "not_finite_union_csp") r.outcome = Outcome::not_finite_union_csp;
  else if (o == "inconclusive") r.outcome = Outcome::inconclusive;
  else throw FormatError("classification: unknown outcome '" + o + "'");
  for (const auto& m : j["minimal_family"]) r.minimal_family.push_back(lift_from_json(m));
  if (j.contains("duals")) r.duals = dual_candidate_from_json(j["duals"]);
  if (j.contains("cyclic_witness")) {
    const Json& w = j["cyclic_witness"];
    require_keys(w, {"member", "cycle"}, "cyclic witness");
    if (!w.contains("member") || !w["member"].is_number_unsigned() || !w.contains("cycle"))
      throw FormatError("cyclic witness: needs 'member' and 'cycle'");
    const auto member = w["member"].get<std::size_t>();
    if (member >= r.minimal_family.size()) throw FormatError("cyclic witness: member index out of range");
    r.cyclic_witness = CyclicWitness{member, cycle_from_json(w["cycle"], r.minimal_family[member].structure().signature())};
  }
  if ((r.outcome == Outcome::csp) != r.duals.has_value() ||
      (r.outcome == Outcome::not_finite_union_csp) != r.cyclic_witness.has_value())
    throw FormatError("classification: fields do not match the outcome");
  return r;
}

}  // namespace liftshadow
