#include "liftshadow/duality.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "liftshadow/canonical.hpp"
#include "liftshadow/enumerate.hpp"
#include "liftshadow/errors.hpp"
#include "liftshadow/incidence.hpp"
#include "parallel.hpp"

namespace liftshadow {

std::optional<CspWitness> csp_witness(const Structure& a, const std::vector<Structure>& templates, std::uint64_t budget) {
  for (std::size_t i = 0; i < templates.size(); ++i) {
    auto h = find_hom(a, templates[i], HomVariant::standard, budget);
    if (h) return CspWitness{i, std::move(*h)};
  }
  return std::nullopt;
}

namespace {

// Runs `in_forb`/`in_csp` over the enumeration and reports the first
// disagreement.
DualityReport sweep(const Signature& sig, std::size_t n_max, const VerifyOptions& options,
                    const std::function<bool(const Structure&)>& in_forb,
                    const std::function<bool(const Structure&)>& in_csp) {
  DualityReport report;
  EnumerationOptions eo;
  eo.cover_relations = options.cover_relations;
  StructureEnumerator en(sig, eo);
  for (std::size_t n = 0; n <= n_max; ++n) {
    std::vector<Structure> level;
    std::vector<char> forb_side;
    try {
      level = en.next_level();
      forb_side.assign(level.size(), 0);
      auto hit = detail::first_hit(level.size(), options.jobs, [&](std::size_t i) {
        const bool f = in_forb(level[i]);
        forb_side[i] = f;
        return f != in_csp(level[i]);
      });
      if (hit) {
        report.status = DualityStatus::counterexample;
        report.counterexample = level[*hit];
        report.side = forb_side[*hit] ? CounterexampleSide::forb_not_csp : CounterexampleSide::csp_not_forb;
        return report;
      }
    } catch (const BudgetExceeded&) {
      report.status = DualityStatus::budget_exceeded;
      return report;
    }
    report.verified_to = static_cast<long>(n);
  }
  return report;
}

bool avoids(const Structure& s, const std::vector<Structure>& forbidden, HomVariant variant, std::uint64_t budget) {
  for (const auto& f : forbidden)
    if (find_hom(f, s, variant, budget)) return false;
  return true;
}

Structure restrict_to_covered(const Structure& s, const std::vector<std::size_t>& cover) {
  if (cover.empty()) return s;
  std::vector<bool> covered(s.size(), false);
  for (auto r : cover)
    for (auto t : s.tuples(r)) covered[t[0]] = true;
  std::vector<Element> keep;
  for (Element v = 0; v < s.size(); ++v)
    if (covered[v]) keep.push_back(v);
  return keep.size() == s.size() ? s : induced_substructure(s, keep);
}

}  // namespace

DualityReport verify_duality(const Signature& sig, const std::vector<Structure>& forbidden,
                             const std::vector<Structure>& templates, std::size_t n_max, const VerifyOptions& options) {
  for (const auto& f : forbidden) require_compatible(sig, f.signature(), "verify_duality");
  for (const auto& d : templates) require_compatible(sig, d.signature(), "verify_duality");
  return sweep(
      sig, n_max, options, [&](const Structure& s) { return avoids(s, forbidden, HomVariant::standard, options.budget); },
      [&](const Structure& s) { return csp_member(s, templates, options.budget); });
}

DualityReport verify_duality(const std::vector<Structure>& forbidden, const std::vector<Structure>& templates,
                             std::size_t n_max, const VerifyOptions& options) {
  if (!forbidden.empty()) return verify_duality(forbidden.front().signature(), forbidden, templates, n_max, options);
  if (!templates.empty()) return verify_duality(templates.front().signature(), forbidden, templates, n_max, options);
  throw std::invalid_argument("verify_duality: no structure to read the signature from");
}

DualityReport verify_lifted_duality(const ForbFamily& family, const std::vector<Structure>& templates,
                                    std::size_t n_max, const VerifyOptions& options) {
  const Signature ext = family.extended_signature();
  for (const auto& d : templates) require_compatible(ext, d.signature(), "verify_lifted_duality");
  VerifyOptions opts = options;
  opts.cover_relations.clear();
  for (std::size_t c = 0; c < family.colors.size(); ++c) opts.cover_relations.push_back(family.base_signature.size() + c);
  return sweep(
      ext, n_max, opts, [&](const Structure& s) { return !forb_violation(s, family, options.budget).has_value(); },
      [&](const Structure& s) { return csp_member(s, templates, options.budget); });
}

DualityReport verify_shadow_duality(const ForbFamily& family, const std::vector<Structure>& templates,
                                    std::size_t n_max, const VerifyOptions& options) {
  for (const auto& d : templates) require_compatible(family.base_signature, d.signature(), "verify_shadow_duality");
  VerifyOptions opts = options;
  opts.cover_relations.clear();
  return sweep(
      family.base_signature, n_max, opts,
      [&](const Structure& s) { return shadow_member(s, family, options.budget).has_value(); },
      [&](const Structure& s) { return csp_member(s, templates, options.budget); });
}

Structure tree_dual_construction(const Structure& tree) {
  const auto& sig = tree.signature();
  const auto inc = incidence_multigraph(tree);
  std::map<Block, std::size_t> block_id;
  for (std::size_t b = 0; b < inc.blocks.size(); ++b) block_id[inc.blocks[b]] = b;

  std::vector<std::vector<std::size_t>> incident(tree.size());
  for (std::size_t b = 0; b < inc.blocks.size(); ++b)
    for (auto v : inc.blocks[b].tuple)
      if (incident[v].empty() || incident[v].back() != b) incident[v].push_back(b);
  for (auto& list : incident) list.erase(std::unique(list.begin(), list.end()), list.end());

  // Elements of the dual, as choice vectors in mixed-radix order.
  std::size_t count = 1;
  for (const auto& list : incident) count *= list.size();
  std::vector<std::vector<std::size_t>> choice(count, std::vector<std::size_t>(tree.size()));
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t rest = i;
    for (std::size_t v = tree.size(); v-- > 0;) {
      choice[i][v] = incident[v][rest % incident[v].size()];
      rest /= incident[v].size();
    }
  }

  StructureBuilder b(sig, count);
  for (std::size_t r = 0; r < sig.size(); ++r) {
    const std::size_t k = sig[r].arity;
    // Raw tuples of T with the block each belongs to.
    std::vector<std::pair<std::vector<Element>, std::size_t>> raw;
    for (auto t : tree.tuples(r)) {
      std::vector<Element> tuple(t.begin(), t.end());
      Block key{r, tuple};
      if (sig[r].symmetric) {
        std::vector<Element> rev(tuple.rbegin(), tuple.rend());
        key.tuple = std::min(tuple, rev);
      }
      raw.emplace_back(std::move(tuple), block_id.at(key));
    }
    std::vector<Element> idx(k, 0);
    if (count == 0) continue;
    while (true) {
      bool blocked = false;
      for (const auto& [t, blk] : raw) {
        bool all = true;
        for (std::size_t j = 0; j < k && all; ++j) all = choice[idx[j]][t[j]] == blk;
        if (all) {
          blocked = true;
          break;
        }
      }
      if (!blocked) b.add(r, idx);
      std::size_t p = k;
      while (p > 0 && idx[p - 1] + 1 == count) idx[--p] = 0;
      if (p == 0) break;
      ++idx[p - 1];
    }
  }
  return std::move(b).build();
}

namespace {

// Hom-maximum of Forb({tree}) among structures of size <= m, if one exists.
std::optional<Structure> maximum_below(const Structure& tree, std::size_t m, const DualBounds& bounds) {
  EnumerationOptions eo;
  eo.cover_relations = bounds.verify.cover_relations;
  std::vector<Structure> forb;
  for (auto& s : enumerate_structures(tree.signature(), m, eo))
    if (!find_hom(tree, s, HomVariant::standard, bounds.verify.budget)) forb.push_back(std::move(s));
  if (forb.empty()) return std::nullopt;
  // Whenever a maximum exists, this scan ends on a structure equivalent to it.
  std::size_t cand = 0;
  for (std::size_t i = 1; i < forb.size(); ++i)
    if (!find_hom(forb[i], forb[cand], HomVariant::standard, bounds.verify.budget)) cand = i;
  for (const auto& s : forb)
    if (!find_hom(s, forb[cand], HomVariant::standard, bounds.verify.budget)) return std::nullopt;
  return core(forb[cand], bounds.verify.budget).core;
}

Structure searched_dual(const Structure& tree, const DualBounds& bounds) {
  std::optional<Structure> previous;
  for (std::size_t m = 0; m <= bounds.search_max; ++m) {
    auto cur = maximum_below(tree, m, bounds);
    if (cur && previous && *cur == *previous) return *cur;
    previous = std::move(cur);
  }
  throw BudgetExceeded("dual search: no candidate stable for two consecutive sizes up to " +
                       std::to_string(bounds.search_max));
}

void check_outside(const std::vector<Structure>& forbidden, const std::vector<Structure>& duals, std::uint64_t budget) {
  for (const auto& d : duals)
    for (const auto& f : forbidden)
      if (find_hom(f, d, HomVariant::standard, budget))
        throw std::logic_error("dual admits a homomorphism from a forbidden structure");
}

long certify(const Signature& sig, const std::vector<Structure>& forbidden, const std::vector<Structure>& duals,
             const DualBounds& bounds) {
  auto report = verify_duality(sig, forbidden, duals, bounds.n_max, bounds.verify);
  if (report.status == DualityStatus::counterexample)
    throw std::logic_error("constructed dual fails verification on a structure with " +
                           std::to_string(report.counterexample->size()) + " elements");
  return report.verified_to;
}

}  // namespace

DualCandidate dual_of_tree(const Structure& tree, const DualBounds& bounds) {
  if (!incidence_analysis(tree).is_tree) throw std::invalid_argument("dual_of_tree: input is not a tree");
  Structure d = bounds.provenance == DualProvenance::searched ? searched_dual(tree, bounds)
                                                              : tree_dual_construction(tree);
  d = core(restrict_to_covered(d, bounds.verify.cover_relations), bounds.verify.budget).core;
  DualCandidate out;
  out.duals = {d};
  out.provenance = bounds.provenance;
  check_outside({tree}, out.duals, bounds.verify.budget);
  out.verified_to = certify(tree.signature(), {tree}, out.duals, bounds);
  return out;
}

std::vector<Structure> hom_maximal_cores(const std::vector<Structure>& list, std::uint64_t budget) {
  std::vector<Structure> cores;
  for (const auto& s : list) cores.push_back(core(s, budget).core);
  std::sort(cores.begin(), cores.end(), canonical_less);
  cores.erase(std::unique(cores.begin(), cores.end()), cores.end());
  std::vector<Structure> out;
  for (std::size_t i = 0; i < cores.size(); ++i) {
    bool below = false;
    for (std::size_t j = 0; j < cores.size() && !below; ++j)
      below = j != i && find_hom(cores[i], cores[j], HomVariant::standard, budget).has_value();
    if (!below) out.push_back(cores[i]);
  }
  return out;
}

DualCandidate dual_set_of_family(const Signature& sig, const std::vector<Structure>& forests, const DualBounds& bounds) {
  const auto budget = bounds.verify.budget;
  const auto& cover = bounds.verify.cover_relations;
  std::vector<Structure> running{terminal_structure(sig)};
  for (const auto& forest : forests) {
    require_compatible(sig, forest.signature(), "dual_set_of_family");
    if (!incidence_analysis(forest).is_forest) throw std::invalid_argument("dual_set_of_family: member is not a forest");
    std::vector<Structure> component_duals;
    for (const auto& comp : components(forest)) {
      Structure d = bounds.provenance == DualProvenance::searched ? searched_dual(comp, bounds)
                                                                  : tree_dual_construction(comp);
      component_duals.push_back(restrict_to_covered(d, cover));
    }
    component_duals = hom_maximal_cores(component_duals, budget);
    std::vector<Structure> next;
    for (const auto& r : running)
      for (const auto& d : component_duals) next.push_back(restrict_to_covered(product(r, d), cover));
    running = hom_maximal_cores(next, budget);
  }
  running = hom_maximal_cores(running, budget);
  DualCandidate out;
  out.duals = std::move(running);
  out.provenance = bounds.provenance;
  check_outside(forests, out.duals, budget);
  out.verified_to = certify(sig, forests, out.duals, bounds);
  return out;
}

DualCandidate dual_set_of_family(const std::vector<Structure>& forests, const DualBounds& bounds) {
  if (forests.empty()) throw std::invalid_argument("dual_set_of_family: empty family needs an explicit signature");
  return dual_set_of_family(forests.front().signature(), forests, bounds);
}

std::string_view to_string(DualityStatus s) {
  switch (s) {
    case DualityStatus::verified: return "verified";
    case DualityStatus::counterexample: return "counterexample";
    case DualityStatus::budget_exceeded: return "budget_exceeded";
  }
  return "";
}

std::string_view to_string(CounterexampleSide s) {
  return s == CounterexampleSide::forb_not_csp ? "forb_not_csp" : "csp_not_forb";
}

std::string_view to_string(DualProvenance p) { return p == DualProvenance::constructed ? "constructed" : "searched"; }

Json duality_report_to_json(const DualityReport& r) {
  Json out;
  out["status"] = to_string(r.status);
  out["verified_to"] = r.verified_to;
  if (r.counterexample) {
    out["counterexample"] = structure_to_json(*r.counterexample);
    out["side"] = to_string(*r.side);
  }
  return out;
}

DualityReport duality_report_from_json(const Json& j) {
  require_keys(j, {"status", "verified_to", "counterexample", "side"}, "duality report");
  if (!j.contains("status") || !j["status"].is_string() || !j.contains("verified_to") ||
      !j["verified_to"].is_number_integer())
    throw FormatError("duality report: needs string 'status' and integer 'verified_to'");
  DualityReport r;
  const auto status = j["status"].get<std::string>();
  if (status == "verified") r.status = DualityStatus::verified;
  else if (status == "counterexample") r.status = DualityStatus::counterexample;
  else if (status == "budget_exceeded") r.status = DualityStatus::budget_exceeded;
  else throw FormatError("duality report: unknown status '" + status + "'");
  r.verified_to = j["verified_to"].get<long>();
  if (j.contains("counterexample") != (r.status == DualityStatus::counterexample) ||
      j.contains("side") != j.contains("counterexample"))
    throw FormatError("duality report: counterexample and side go with status counterexample");
  if (j.contains("counterexample")) {
    r.counterexample = structure_from_json(j["counterexample"]);
    const auto side = j["side"].is_string() ? j["side"].get<std::string>() : "";
    if (side == "forb_not_csp") r.side = CounterexampleSide::forb_not_csp;
    else if (side == "csp_not_forb") r.side = CounterexampleSide::csp_not_forb;
    else throw FormatError("duality report: unknown side");
  }
  return r;
}

Json dual_candidate_to_json(const DualCandidate& d) {
  Json duals = Json::array();
  for (const auto& s : d.duals) duals.push_back(structure_to_json(s));
  Json out;
  out["provenance"] = to_string(d.provenance);
  out["verified_to"] = d.verified_to;
  out["duals"] = std::move(duals);
  return out;
}

DualCandidate dual_candidate_from_json(const Json& j) {
  require_keys(j, {"provenance", "verified_to", "duals"}, "dual candidate");
  if (!j.contains("provenance") || !j["provenance"].is_string() || !j.contains("verified_to") ||
      !j["verified_to"].is_number_integer() || !j.contains("duals") || !j["duals"].is_array())
    throw FormatError("dual candidate: needs 'provenance', 'verified_to' and 'duals'");
  DualCandidate d;
  const auto p = j["provenance"].get<std::string>();
  if (p == "constructed") d.provenance = DualProvenance::constructed;
  else if (p == "searched") d.provenance = DualProvenance::searched;
  else throw FormatError("dual candidate: unknown provenance '" + p + "'");
  d.verified_to = j["verified_to"].get<long>();
  for (const auto& s : j["duals"]) d.duals.push_back(structure_from_json(s));
  return d;
}

}  // namespace liftshadow
