#include "liftshadow/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "liftshadow/enumerate.hpp"
#include "liftshadow/errors.hpp"
#include "liftshadow/incidence.hpp"
#include "parallel.hpp"

namespace liftshadow {

SparseFailure::SparseFailure(std::size_t attempts_, std::size_t projection, std::size_t girth, std::size_t target)
    : std::runtime_error("sparsify: " + std::to_string(attempts_) + " attempts failed (projection " +
                         std::to_string(projection) + ", girth " + std::to_string(girth) + ", targets " +
                         std::to_string(target) + ")"),
      attempts(attempts_), projection_failures(projection), girth_failures(girth), target_failures(target) {}

namespace {

std::vector<Element> canonical_block(const Relation& rel, std::vector<Element> t) {
  if (rel.symmetric) {
    std::vector<Element> rev(t.rbegin(), t.rend());
    if (rev < t) return rev;
  }
  return t;
}

// Candidate blocks: every lift of every tuple of A to copy classes.
std::vector<Block> candidate_blocks(const Structure& a, std::size_t n) {
  std::set<Block> out;
  const auto& sig = a.signature();
  for (std::size_t r = 0; r < sig.size(); ++r) {
    const std::size_t k = sig[r].arity;
    for (auto t : a.tuples(r)) {
      std::vector<std::size_t> idx(k, 0);
      while (true) {
        std::vector<Element> lifted(k);
        for (std::size_t j = 0; j < k; ++j) lifted[j] = static_cast<Element>(t[j] * n + idx[j]);
        out.insert(Block{r, canonical_block(sig[r], std::move(lifted))});
        std::size_t p = k;
        while (p > 0 && idx[p - 1] + 1 == n) idx[--p] = 0;
        if (p == 0) break;
        ++idx[p - 1];
      }
    }
  }
  return {out.begin(), out.end()};
}

Structure build(const Signature& sig, std::size_t size, const std::vector<Block>& blocks) {
  StructureBuilder b(sig, size);
  for (const auto& blk : blocks) {
    if (sig[blk.relation].symmetric) b.add_symmetric(blk.relation, blk.tuple);
    else b.add(blk.relation, blk.tuple);
  }
  return std::move(b).build();
}

}  // namespace

SparseResult sparsify(const SparseRequest& req) {
  const Structure& a = req.a;
  const std::size_t n0 = req.copies.value_or(std::max<std::size_t>(8, a.size() * req.girth));
  if (req.k < 1) throw std::invalid_argument("sparsify: k must be at least 1");
  if (req.girth < 2) throw std::invalid_argument("sparsify: girth bound must be at least 2");
  if (n0 < 1) throw std::invalid_argument("sparsify: need at least one copy per element");
  if (req.probability && !(*req.probability > 0.0 && *req.probability <= 1.0))
    throw std::invalid_argument("sparsify: probability must lie in (0, 1]");
  if (req.max_retries < 1) throw std::invalid_argument("sparsify: max_retries must be at least 1");

  const auto& sig = a.signature();
  const auto targets = enumerate_structures(sig.without_symmetry(), req.k);
  std::vector<std::optional<Hom>> a_homs(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i)
    a_homs[i] = find_hom(a, targets[i], HomVariant::standard, req.budget);

  std::mt19937_64 rng(req.seed);
  const std::size_t double_every = (req.max_retries + 2) / 3;
  std::size_t n = n0, projection_failures = 0, girth_failures = 0, target_failures = 0;
  for (std::size_t attempt = 0; attempt < req.max_retries; ++attempt) {
    if (attempt > 0 && attempt % double_every == 0) n *= 2;
    std::vector<Block> kept;
    for (auto& blk : candidate_blocks(a, n)) {
      const double arity = static_cast<double>(sig[blk.relation].arity);
      const double p = req.probability.value_or(
          std::min(1.0, std::pow(static_cast<double>(n), 1.0 - arity + 1.0 / static_cast<double>(req.girth))));
      if (std::bernoulli_distribution(p)(rng)) kept.push_back(std::move(blk));
    }
    Structure b = build(sig, a.size() * n, kept);
    // Break short cycles one block at a time.
    while (true) {
      auto cycle = shortest_cycle(b);
      if (!cycle || cycle->length() >= req.girth) break;
      const Block victim = *std::min_element(cycle->blocks.begin(), cycle->blocks.end());
      kept.erase(std::find(kept.begin(), kept.end(), victim));
      b = build(sig, a.size() * n, kept);
    }

    std::vector<Element> proj(b.size());
    for (Element v = 0; v < b.size(); ++v) proj[v] = static_cast<Element>(v / n);
    if (!is_homomorphism(b, a, proj)) {
      ++projection_failures;
      continue;
    }
    const auto summary = incidence_analysis(b);
    if (summary.girth && *summary.girth < req.girth) {
      ++girth_failures;
      continue;
    }
    auto bad = detail::first_hit(targets.size(), req.jobs, [&](std::size_t i) {
      const Structure& c = targets[i];
      // Composition with the projection must give a homomorphism.
      if (a_homs[i]) return !is_homomorphism(b, c, compose(proj, a_homs[i]->map));
      return find_hom(b, c, HomVariant::standard, req.budget).has_value();
    });
    if (bad) {
      ++target_failures;
      continue;
    }
    SparseResult out;
    out.b = std::move(b);
    out.projection = Hom{std::move(proj)};
    out.girth_achieved = summary.girth;
    out.targets_checked = targets.size();
    out.retries_used = attempt;
    out.copies = n;
    out.seed = req.seed;
    return out;
  }
  throw SparseFailure(req.max_retries, projection_failures, girth_failures, target_failures);
}

Json sparse_result_to_json(const SparseResult& r) {
  Json report;
  report["seed"] = r.seed;
  report["girth_achieved"] = r.girth_achieved ? Json(*r.girth_achieved) : Json(nullptr);
  report["targets_checked"] = r.targets_checked;
  report["retries_used"] = r.retries_used;
  report["copies"] = r.copies;
  Json out;
  out["structure"] = structure_to_json(r.b);
  out["projection"] = r.projection.map;
  out["report"] = std::move(report);
  return out;
}

SparseResult sparse_result_from_json(const Json& j) {
  require_keys(j, {"structure", "projection", "report"}, "sparse result");
  if (!j.contains("structure") || !j.contains("projection") || !j.contains("report"))
    throw FormatError("sparse result: needs 'structure', 'projection' and 'report'");
  const Json& rep = j["report"];
  require_keys(rep, {"seed", "girth_achieved", "targets_checked", "retries_used", "copies"}, "sparse report");
  SparseResult r;
  try {
    r.b = structure_from_json(j["structure"]);
    r.projection.map = j["projection"].get<std::vector<Element>>();
    r.seed = rep.at("seed").get<std::uint64_t>();
    if (!rep.at("girth_achieved").is_null()) r.girth_achieved = rep["girth_achieved"].get<std::size_t>();
    r.targets_checked = rep.at("targets_checked").get<std::size_t>();
    r.retries_used = rep.at("retries_used").get<std::size_t>();
    r.copies = rep.at("copies").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("sparse result: ") + e.what());
  }
  if (r.projection.map.size() != r.b.size()) throw FormatError("sparse result: projection length differs from universe");
  return r;
}

}  // namespace liftshadow
