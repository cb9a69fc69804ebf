#include "liftshadow/hom.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <string>

#include "liftshadow/canonical.hpp"
#include "liftshadow/errors.hpp"

namespace liftshadow {

std::string_view to_string(HomVariant v) {
  switch (v) {
    case HomVariant::standard: return "standard";
    case HomVariant::injective: return "injective";
    case HomVariant::full: return "full";
  }
  return "standard";
}

HomVariant parse_variant(std::string_view name) {
  if (name == "standard") return HomVariant::standard;
  if (name == "injective") return HomVariant::injective;
  if (name == "full") return HomVariant::full;
  throw FormatError("unknown homomorphism variant '" + std::string(name) + "'");
}

bool is_homomorphism(const Structure& source, const Structure& target, std::span<const Element> map, HomVariant variant) {
  if (!source.signature().compatible(target.signature())) return false;
  if (map.size() != source.size()) return false;
  for (Element v : map)
    if (v >= target.size()) return false;
  std::vector<Element> image;
  for (std::size_t r = 0; r < source.signature().size(); ++r) {
    for (auto t : source.tuples(r)) {
      image.clear();
      for (Element e : t) image.push_back(map[e]);
      if (!target.contains(r, image)) return false;
    }
  }
  if (variant == HomVariant::injective) {
    std::vector<Element> sorted(map.begin(), map.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  }
  if (variant == HomVariant::full) {
    std::vector<std::vector<Element>> preimage(target.size());
    for (Element a = 0; a < source.size(); ++a) preimage[map[a]].push_back(a);
    std::vector<Element> pre;
    for (std::size_t r = 0; r < target.signature().size(); ++r) {
      const std::size_t k = target.signature()[r].arity;
      if (k < 2) continue;
      for (auto tb : target.tuples(r)) {
        // Every source tuple over the preimages must be present.
        bool empty = false;
        for (Element e : tb) empty = empty || preimage[e].empty();
        if (empty) continue;
        std::vector<std::size_t> idx(k, 0);
        pre.assign(k, 0);
        while (true) {
          for (std::size_t p = 0; p < k; ++p) pre[p] = preimage[tb[p]][idx[p]];
          if (!source.contains(r, pre)) return false;
          std::size_t p = k;
          while (p > 0 && idx[p - 1] + 1 == preimage[tb[p - 1]].size()) idx[--p] = 0;
          if (p == 0) break;
          ++idx[p - 1];
        }
      }
    }
  }
  return true;
}

std::vector<Element> compose(std::span<const Element> first, std::span<const Element> second) {
  std::vector<Element> out(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) out[i] = second[first[i]];
  return out;
}

namespace {

using Word = std::uint64_t;

inline std::size_t words_for(std::size_t n) { return (n + 63) / 64; }
inline bool test(const Word* w, std::size_t i) { return (w[i / 64] >> (i % 64)) & 1U; }
inline void set(Word* w, std::size_t i) { w[i / 64] |= Word{1} << (i % 64); }

// Per-relation lookup tables over target elements.
struct RelationIndex {
  std::size_t arity = 0;
  std::vector<Word> out, in;        // binary: row per element
  std::vector<Word> loops;          // binary: elements with a loop
  std::vector<Word> position_vals;  // row per position: values that occur there
};

class Search {
 public:
  Search(const Structure& a, const Structure& b, const HomSearchOptions& opt)
      : a_(a), b_(b), variant_(opt.variant), budget_(opt.budget), na_(a.size()), nb_(b.size()), w_(words_for(b.size())) {
    index_target();
    index_source();
    dom_.assign(na_ * w_, 0);
    for (std::size_t x = 0; x < na_; ++x)
      for (std::size_t v = 0; v < nb_; ++v) set(row(x), v);
    for (Element v : opt.forbidden_targets)
      if (v < nb_)
        for (std::size_t x = 0; x < na_; ++x) row(x)[v / 64] &= ~(Word{1} << (v % 64));
    assignment_.assign(na_, 0);
    assigned_.assign(na_, 0);
    one_.assign(w_, 0);
  }

  std::optional<Hom> run() {
    if (variant_ == HomVariant::injective && na_ > nb_) return std::nullopt;
    if (!initial_filter()) return std::nullopt;
    if (!descend(0)) return std::nullopt;
    return Hom{assignment_, variant_};
  }

 private:
  Word* row(std::size_t x) { return dom_.data() + x * w_; }

  void index_target() {
    const auto& sig = b_.signature();
    rel_.resize(sig.size());
    for (std::size_t r = 0; r < sig.size(); ++r) {
      auto& ri = rel_[r];
      ri.arity = sig[r].arity;
      ri.position_vals.assign(ri.arity * w_, 0);
      if (ri.arity == 2) {
        ri.out.assign(nb_ * w_, 0);
        ri.in.assign(nb_ * w_, 0);
        ri.loops.assign(w_, 0);
      }
      for (auto t : b_.tuples(r)) {
        for (std::size_t p = 0; p < t.size(); ++p) set(ri.position_vals.data() + p * w_, t[p]);
        if (ri.arity == 2) {
          set(ri.out.data() + t[0] * w_, t[1]);
          set(ri.in.data() + t[1] * w_, t[0]);
          if (t[0] == t[1]) set(ri.loops.data(), t[0]);
        }
      }
    }
  }

  void index_source() {
    occ_.resize(na_);
    degree_.assign(na_, 0);
    for (std::size_t r = 0; r < a_.signature().size(); ++r) {
      auto range = a_.tuples(r);
      for (std::size_t i = 0; i < range.size(); ++i) {
        auto t = range[i];
        for (std::size_t p = 0; p < t.size(); ++p) {
          ++degree_[t[p]];
          if (std::find(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(p), t[p]) == t.begin() + static_cast<std::ptrdiff_t>(p))
            occ_[t[p]].push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(i)});
        }
      }
    }
    if (variant_ == HomVariant::full) {
      wa_ = words_for(na_);
      src_out_.resize(a_.signature().size());
      for (std::size_t r = 0; r < a_.signature().size(); ++r) {
        if (a_.signature()[r].arity != 2) continue;
        src_out_[r].assign(na_ * wa_, 0);
        for (auto t : a_.tuples(r)) set(src_out_[r].data() + t[0] * wa_, t[1]);
      }
    }
  }

  bool initial_filter() {
    for (std::size_t r = 0; r < a_.signature().size(); ++r) {
      const auto& ri = rel_[r];
      for (auto t : a_.tuples(r)) {
        for (std::size_t p = 0; p < t.size(); ++p) {
          Word* d = row(t[p]);
          const Word* allowed = ri.position_vals.data() + p * w_;
          for (std::size_t k = 0; k < w_; ++k) d[k] &= allowed[k];
        }
        if (ri.arity == 2 && t[0] == t[1]) {
          Word* d = row(t[0]);
          for (std::size_t k = 0; k < w_; ++k) d[k] &= ri.loops[k];
        }
      }
    }
    for (std::size_t x = 0; x < na_; ++x)
      if (empty(x)) return false;
    return true;
  }

  bool empty(std::size_t x) {
    const Word* d = row(x);
    for (std::size_t k = 0; k < w_; ++k)
      if (d[k]) return false;
    return true;
  }

  std::size_t count(std::size_t x) {
    const Word* d = row(x);
    std::size_t c = 0;
    for (std::size_t k = 0; k < w_; ++k) c += static_cast<std::size_t>(std::popcount(d[k]));
    return c;
  }

  // Intersects dom(x) with `mask` (complemented when `negate`), logging
  // changed words on the trail. Returns false on wipe-out.
  bool restrict(std::size_t x, const Word* mask, bool negate = false) {
    Word* d = row(x);
    bool any = false;
    for (std::size_t k = 0; k < w_; ++k) {
      const Word m = negate ? ~mask[k] : mask[k];
      const Word nv = d[k] & m;
      if (nv != d[k]) {
        trail_.push_back({x * w_ + k, d[k]});
        d[k] = nv;
      }
      any = any || nv != 0;
    }
    return any;
  }

  bool remove_value(std::size_t x, std::size_t v) {
    Word* d = row(x);
    const Word bit = Word{1} << (v % 64);
    if (d[v / 64] & bit) {
      trail_.push_back({x * w_ + v / 64, d[v / 64]});
      d[v / 64] &= ~bit;
    }
    return !empty(x);
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      dom_[trail_.back().first] = trail_.back().second;
      trail_.pop_back();
    }
  }

  std::optional<std::size_t> choose() {
    std::optional<std::size_t> best;
    std::size_t best_count = 0;
    for (std::size_t x = 0; x < na_; ++x) {
      if (assigned_[x]) continue;
      const std::size_t c = count(x);
      if (!best || c < best_count || (c == best_count && degree_[x] > degree_[*best])) {
        best = x;
        best_count = c;
      }
    }
    return best;
  }

  bool descend(std::size_t depth) {
    if (depth == na_) return true;
    const std::size_t x = *choose();
    std::vector<Element> values;
    const Word* d = row(x);
    for (std::size_t k = 0; k < w_; ++k)
      for (Word w = d[k]; w; w &= w - 1) values.push_back(static_cast<Element>(k * 64 + static_cast<std::size_t>(std::countr_zero(w))));
    for (Element v : values) {
      if (++nodes_ > budget_) throw BudgetExceeded("homomorphism search exceeded " + std::to_string(budget_) + " assignments");
      const std::size_t mark = trail_.size();
      assigned_[x] = 1;
      assignment_[x] = v;
      assigned_list_.push_back(static_cast<Element>(x));
      std::fill(one_.begin(), one_.end(), 0);
      set(one_.data(), v);
      bool ok = restrict(x, one_.data()) && propagate(static_cast<Element>(x), v);
      if (ok && descend(depth + 1)) return true;
      assigned_list_.pop_back();
      assigned_[x] = 0;
      undo(mark);
    }
    return false;
  }

  bool propagate(Element x, Element v) {
    for (const auto& [r, ti] : occ_[x]) {
      const auto& ri = rel_[r];
      auto t = a_.tuples(r)[ti];
      if (ri.arity == 1) continue;
      if (ri.arity == 2) {
        if (t[0] == t[1]) {
          if (!test(ri.loops.data(), v)) return false;
          continue;
        }
        if (t[0] == x) {
          if (!restrict(t[1], ri.out.data() + v * w_)) return false;
        } else {
          if (!restrict(t[0], ri.in.data() + v * w_)) return false;
        }
        continue;
      }
      if (!propagate_general(r, t)) return false;
    }
    if (variant_ == HomVariant::injective) {
      for (std::size_t y = 0; y < na_; ++y)
        if (!assigned_[y] && !remove_value(y, v)) return false;
    }
    if (variant_ == HomVariant::full && !check_full(x, v)) return false;
    return true;
  }

  // Generalised forward checking for arity >= 3.
  bool propagate_general(std::size_t r, std::span<const Element> t) {
    const std::size_t k = t.size();
    bool all = true;
    for (Element e : t) all = all && assigned_[e];
    if (all) {
      image_.clear();
      for (Element e : t) image_.push_back(assignment_[e]);
      return b_.contains(r, image_);
    }
    support_.assign(na_, {});
    std::vector<Element> touched;
    for (Element e : t)
      if (!assigned_[e] && support_[e].empty()) {
        support_[e].assign(w_, 0);
        touched.push_back(e);
      }
    for (auto tb : b_.tuples(r)) {
      bool match = true;
      for (std::size_t p = 0; p < k && match; ++p) {
        const Element e = t[p];
        if (assigned_[e]) {
          match = assignment_[e] == tb[p];
        } else {
          match = test(row(e), tb[p]);
          for (std::size_t q = 0; q < p && match; ++q)
            if (t[q] == e) match = tb[q] == tb[p];
        }
      }
      if (!match) continue;
      for (std::size_t p = 0; p < k; ++p)
        if (!assigned_[t[p]]) set(support_[t[p]].data(), tb[p]);
    }
    for (Element e : touched)
      if (!restrict(e, support_[e].data())) return false;
    return true;
  }

  bool check_full(Element x, Element v) {
    for (std::size_t r = 0; r < a_.signature().size(); ++r) {
      const std::size_t k = rel_[r].arity;
      if (k < 2) continue;
      if (k == 2) {
        const Word* a_out = src_out_[r].data();
        // Non-edges at x must map to non-edges.
        for (std::size_t y = 0; y < na_; ++y) {
          const bool xy = test(a_out + x * wa_, y);
          const bool yx = test(a_out + y * wa_, x);
          if (assigned_[y]) {
            const Element w = assignment_[y];
            if (!xy && test(rel_[r].out.data() + v * w_, w)) return false;
            if (!yx && test(rel_[r].in.data() + v * w_, w)) return false;
          } else {
            if (!xy && !restrict(y, rel_[r].out.data() + v * w_, true)) return false;
            if (!yx && !restrict(y, rel_[r].in.data() + v * w_, true)) return false;
          }
        }
        continue;
      }
      // Arity >= 3: every tuple over assigned elements that uses x.
      std::vector<Element> tuple(k), image(k);
      std::vector<std::size_t> idx(k, 0);
      const auto& pool = assigned_list_;
      while (true) {
        bool uses = false;
        for (std::size_t p = 0; p < k; ++p) {
          tuple[p] = pool[idx[p]];
          image[p] = assignment_[tuple[p]];
          uses = uses || tuple[p] == x;
        }
        if (uses && b_.contains(r, image) && !a_.contains(r, tuple)) return false;
        std::size_t p = k;
        while (p > 0 && idx[p - 1] + 1 == pool.size()) idx[--p] = 0;
        if (p == 0) break;
        ++idx[p - 1];
      }
    }
    return true;
  }

  const Structure& a_;
  const Structure& b_;
  HomVariant variant_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::size_t na_, nb_, w_, wa_ = 0;
  std::vector<RelationIndex> rel_;
  std::vector<std::vector<Word>> src_out_;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> occ_;
  std::vector<std::size_t> degree_;
  std::vector<Word> dom_;
  std::vector<Word> one_;
  std::vector<std::pair<std::size_t, Word>> trail_;
  std::vector<Element> assignment_;
  std::vector<char> assigned_;
  std::vector<Element> assigned_list_;
  std::vector<Element> image_;
  std::vector<std::vector<Word>> support_;
};

}  // namespace

std::optional<Hom> find_hom(const Structure& source, const Structure& target, const HomSearchOptions& options) {
  require_compatible(source.signature(), target.signature(), "find_hom");
  if (source.size() == 0) return Hom{{}, options.variant};
  if (target.size() == 0) return std::nullopt;
  return Search(source, target, options).run();
}

std::optional<Hom> find_hom(const Structure& source, const Structure& target, HomVariant variant, std::uint64_t budget) {
  return find_hom(source, target, HomSearchOptions{variant, budget, {}});
}

bool hom_equivalent(const Structure& a, const Structure& b, std::uint64_t budget) {
  return find_hom(a, b, HomVariant::standard, budget).has_value() && find_hom(b, a, HomVariant::standard, budget).has_value();
}

namespace {

// Repeatedly sends an element u to some v when that single substitution is
// an endomorphism of the substructure induced on the surviving elements.
// Returns the resulting retraction of s onto the survivors.
std::vector<Element> fold_dominated(const Structure& s) {
  const std::size_t n = s.size();
  std::vector<Element> map(n);
  std::iota(map.begin(), map.end(), 0);
  std::vector<char> alive(n, 1);
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> occ(n);
  for (std::size_t r = 0; r < s.signature().size(); ++r) {
    auto range = s.tuples(r);
    for (std::size_t i = 0; i < range.size(); ++i) {
      auto t = range[i];
      for (std::size_t p = 0; p < t.size(); ++p)
        if (std::find(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(p), t[p]) == t.begin() + static_cast<std::ptrdiff_t>(p))
          occ[t[p]].push_back({r, i});
    }
  }
  std::vector<Element> image;
  auto folds_into = [&](Element u, Element v) {
    for (const auto& [r, i] : occ[u]) {
      auto t = s.tuples(r)[i];
      bool inside = true;
      for (Element e : t) inside = inside && alive[e];
      if (!inside) continue;
      image.assign(t.begin(), t.end());
      for (auto& e : image)
        if (e == u) e = v;
      if (!s.contains(r, image)) return false;
    }
    return true;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (Element u = 0; u < n; ++u) {
      if (!alive[u]) continue;
      for (Element v = 0; v < n; ++v) {
        if (u == v || !alive[v] || !folds_into(u, v)) continue;
        alive[u] = 0;
        for (auto& m : map)
          if (m == u) m = v;
        changed = true;
        break;
      }
    }
  }
  return map;
}

}  // namespace

CoreResult core(const Structure& s, std::uint64_t budget) {
  // retraction: s -> s with image `current`.
  std::vector<Element> retraction = fold_dominated(s);
  std::vector<Element> current = retraction;
  std::sort(current.begin(), current.end());
  current.erase(std::unique(current.begin(), current.end()), current.end());

  while (true) {
    const Structure sub = induced_substructure(s, current);
    std::optional<Hom> shrink;
    for (Element v = 0; v < sub.size() && !shrink; ++v)
      shrink = find_hom(sub, sub, HomSearchOptions{HomVariant::standard, budget, {v}});
    if (!shrink) break;
    std::vector<Element> pos(s.size(), 0);
    for (std::size_t i = 0; i < current.size(); ++i) pos[current[i]] = static_cast<Element>(i);
    for (auto& m : retraction) m = current[shrink->map[pos[m]]];
    std::vector<Element> next;
    for (Element i : shrink->map) next.push_back(current[i]);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    current = std::move(next);
  }

  // The retraction restricted to the core is an automorphism; undo it so
  // the core is fixed pointwise.
  std::vector<Element> pos(s.size(), 0);
  for (std::size_t i = 0; i < current.size(); ++i) pos[current[i]] = static_cast<Element>(i);
  std::vector<Element> inverse(current.size());
  for (std::size_t i = 0; i < current.size(); ++i) inverse[pos[retraction[current[i]]]] = current[i];
  for (auto& m : retraction) m = inverse[pos[m]];

  const Structure sub = induced_substructure(s, current);
  const auto lab = canonical_labeling(sub);
  CoreResult out;
  out.core = relabel(sub, lab.perm);
  out.elements.assign(current.size(), 0);
  for (std::size_t i = 0; i < current.size(); ++i) out.elements[lab.perm[i]] = current[i];
  out.retraction.variant = HomVariant::standard;
  out.retraction.map.resize(s.size());
  for (Element a = 0; a < s.size(); ++a) out.retraction.map[a] = lab.perm[pos[retraction[a]]];
  return out;
}

bool is_core(const Structure& s, std::uint64_t budget) {
  for (Element v = 0; v < s.size(); ++v)
    if (find_hom(s, s, HomSearchOptions{HomVariant::standard, budget, {v}})) return false;
  return true;
}

Json hom_to_json(const Hom& h) {
  Json out;
  out["variant"] = to_string(h.variant);
  out["map"] = h.map;
  return out;
}

Hom hom_from_json(const Json& j) {
  require_keys(j, {"variant", "map"}, "hom");
  if (!j.contains("variant") || !j["variant"].is_string() || !j.contains("map") || !j["map"].is_array())
    throw FormatError("hom: needs string 'variant' and array 'map'");
  Hom h;
  h.variant = parse_variant(j["variant"].get<std::string>());
  for (const auto& e : j["map"]) {
    if (!e.is_number_unsigned()) throw FormatError("hom: map entries must be non-negative integers");
    h.map.push_back(e.get<Element>());
  }
  return h;
}

Json core_result_to_json(const CoreResult& c) {
  Json out;
  out["core"] = structure_to_json(c.core);
  out["elements"] = c.elements;
  out["retraction"] = c.retraction.map;
  return out;
}

CoreResult core_result_from_json(const Json& j) {
  require_keys(j, {"core", "elements", "retraction"}, "core result");
  if (!j.contains("core") || !j.contains("elements") || !j.contains("retraction"))
    throw FormatError("core result: needs 'core', 'elements' and 'retraction'");
  CoreResult c;
  c.core = structure_from_json(j["core"]);
  try {
    c.elements = j["elements"].get<std::vector<Element>>();
    c.retraction.map = j["retraction"].get<std::vector<Element>>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("core result: ") + e.what());
  }
  if (c.elements.size() != c.core.size()) throw FormatError("core result: one element per core element expected");
  return c;
}

}  // namespace liftshadow
