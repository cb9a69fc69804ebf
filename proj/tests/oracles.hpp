#pragma once

// Brute-force reference implementations used only by tests. None of these
// call into the search, canonicalization or enumeration code they check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "liftshadow/structure.hpp"

namespace oracle {

using liftshadow::Element;
using liftshadow::Structure;

using TupleSet = std::vector<std::set<std::vector<Element>>>;

inline TupleSet tuple_sets(const Structure& s) {
  TupleSet out(s.signature().size());
  for (std::size_t r = 0; r < s.signature().size(); ++r)
    for (auto t : s.tuples(r)) out[r].insert(std::vector<Element>(t.begin(), t.end()));
  return out;
}

enum class Kind { standard, injective, full };

inline bool check_map(const Structure& a, const Structure& b, const std::vector<Element>& f, Kind kind) {
  const auto ta = tuple_sets(a), tb = tuple_sets(b);
  for (std::size_t r = 0; r < ta.size(); ++r)
    for (const auto& t : ta[r]) {
      std::vector<Element> img;
      for (auto e : t) img.push_back(f[e]);
      if (!tb[r].count(img)) return false;
    }
  if (kind == Kind::injective) {
    std::set<Element> seen(f.begin(), f.end());
    if (seen.size() != f.size()) return false;
  }
  if (kind == Kind::full) {
    // Every source tuple (of a non-unary relation) whose image is a target
    // tuple must itself be a tuple.
    for (std::size_t r = 0; r < ta.size(); ++r) {
      const std::size_t k = a.signature()[r].arity;
      if (k < 2) continue;
      std::vector<Element> t(k, 0);
      if (a.size() == 0) continue;
      while (true) {
        std::vector<Element> img;
        for (auto e : t) img.push_back(f[e]);
        if (tb[r].count(img) && !ta[r].count(t)) return false;
        std::size_t p = k;
        while (p > 0 && t[p - 1] + 1 == a.size()) t[--p] = 0;
        if (p == 0) break;
        ++t[p - 1];
      }
    }
  }
  return true;
}

/// Calls `fn` on every map a -> b (all |b|^|a| of them) until it returns true.
inline bool for_each_map(std::size_t na, std::size_t nb, const std::function<bool(const std::vector<Element>&)>& fn) {
  std::vector<Element> f(na, 0);
  if (na == 0) return fn(f);
  if (nb == 0) return false;
  while (true) {
    if (fn(f)) return true;
    std::size_t p = na;
    while (p > 0 && f[p - 1] + 1 == nb) f[--p] = 0;
    if (p == 0) return false;
    ++f[p - 1];
  }
}

inline bool hom_exists(const Structure& a, const Structure& b, Kind kind = Kind::standard) {
  return for_each_map(a.size(), b.size(), [&](const std::vector<Element>& f) { return check_map(a, b, f, kind); });
}

inline Structure apply_perm(const Structure& s, const std::vector<Element>& perm) {
  liftshadow::StructureBuilder b(s.signature(), s.size());
  for (std::size_t r = 0; r < s.signature().size(); ++r)
    for (auto t : s.tuples(r)) {
      std::vector<Element> m;
      for (auto e : t) m.push_back(perm[e]);
      b.add(r, m);
    }
  return std::move(b).build();
}

inline bool isomorphic(const Structure& a, const Structure& b) {
  if (a.size() != b.size()) return false;
  const auto tb = tuple_sets(b);
  std::vector<Element> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (tuple_sets(apply_perm(a, perm)) == tb) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

/// Orbit-minimal representative of s under all permutations, as tuple sets.
inline TupleSet min_relabeling(const Structure& s) {
  std::vector<Element> perm(s.size());
  std::iota(perm.begin(), perm.end(), 0);
  TupleSet best = tuple_sets(s);
  do {
    auto t = tuple_sets(apply_perm(s, perm));
    if (t < best) best = t;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// Number of isomorphism classes of digraphs (loops allowed) on n vertices,
/// by brute force over all 2^(n*n) labeled digraphs.
inline std::size_t digraph_classes(std::size_t n, bool symmetric = false) {
  std::vector<std::pair<Element, Element>> slots;
  for (Element i = 0; i < n; ++i)
    for (Element j = symmetric ? i : 0; j < n; ++j) slots.emplace_back(i, j);
  std::set<TupleSet> classes;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    liftshadow::StructureBuilder b(liftshadow::Signature::digraph(symmetric), n);
    for (std::size_t i = 0; i < slots.size(); ++i)
      if ((mask >> i) & 1U) {
        b.add(0, {slots[i].first, slots[i].second});
        if (symmetric) b.add(0, {slots[i].second, slots[i].first});
      }
    classes.insert(min_relabeling(std::move(b).build()));
  }
  return classes.size();
}

/// Smallest image size over all endomorphisms: the size of the core.
inline std::size_t core_size(const Structure& s) {
  std::size_t best = s.size();
  for_each_map(s.size(), s.size(), [&](const std::vector<Element>& f) {
    if (check_map(s, s, f, Kind::standard)) best = std::min(best, std::set<Element>(f.begin(), f.end()).size());
    return false;
  });
  return best;
}

inline bool has_symmetric_loop_or_edge(const Structure& g) { return g.tuple_count(0) > 0; }

/// Proper k-colouring of the symmetric/undirected reading of a digraph:
/// adjacent vertices differ, loops are never properly colourable.
inline bool k_colorable(const Structure& g, std::size_t k) {
  const std::size_t n = g.size();
  std::vector<std::vector<Element>> adj(n);
  for (auto t : g.tuples(0)) {
    if (t[0] == t[1]) return false;
    adj[t[0]].push_back(t[1]);
    adj[t[1]].push_back(t[0]);
  }
  std::vector<int> col(n, -1);
  std::function<bool(std::size_t)> go = [&](std::size_t v) {
    if (v == n) return true;
    for (int c = 0; c < static_cast<int>(k); ++c) {
      bool ok = true;
      for (auto u : adj[v]) ok = ok && col[u] != c;
      if (!ok) continue;
      col[v] = c;
      if (go(v + 1)) return true;
      col[v] = -1;
    }
    return false;
  };
  return go(0);
}

inline bool bipartite(const Structure& g) {
  const std::size_t n = g.size();
  std::vector<std::vector<Element>> adj(n);
  for (auto t : g.tuples(0)) {
    adj[t[0]].push_back(t[1]);
    adj[t[1]].push_back(t[0]);
  }
  std::vector<int> side(n, -1);
  for (std::size_t s = 0; s < n; ++s) {
    if (side[s] != -1) continue;
    side[s] = 0;
    std::vector<std::size_t> stack{s};
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto u : adj[v]) {
        if (side[u] == -1) {
          side[u] = 1 - side[v];
          stack.push_back(u);
        } else if (side[u] == side[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

/// Adjacency-matrix form of a structure whose relations have arity 1 or 2,
/// for brute-force loops that run millions of times.
struct Dense {
  std::size_t n = 0;
  std::vector<std::size_t> arity;
  std::vector<std::vector<bool>> rel;  // unary: rel[r][x]; binary: rel[r][x * n + y]

  explicit Dense(const Structure& s) : n(s.size()) {
    for (std::size_t r = 0; r < s.signature().size(); ++r) {
      arity.push_back(s.signature()[r].arity);
      rel.emplace_back(arity.back() == 1 ? n : n * n, false);
      for (auto t : s.tuples(r)) rel.back()[arity.back() == 1 ? t[0] : t[0] * n + t[1]] = true;
    }
  }
};

inline bool dense_check(const Dense& a, const Dense& b, const std::vector<Element>& f, Kind kind) {
  for (std::size_t r = 0; r < a.rel.size(); ++r) {
    if (a.arity[r] == 1) {
      for (std::size_t x = 0; x < a.n; ++x)
        if (a.rel[r][x] && !b.rel[r][f[x]]) return false;
      continue;
    }
    for (std::size_t x = 0; x < a.n; ++x)
      for (std::size_t y = 0; y < a.n; ++y) {
        const bool in_a = a.rel[r][x * a.n + y], in_b = b.rel[r][f[x] * b.n + f[y]];
        if (in_a && !in_b) return false;
        if (kind == Kind::full && in_b && !in_a) return false;
      }
  }
  if (kind == Kind::injective)
    for (std::size_t x = 0; x < a.n; ++x)
      for (std::size_t y = x + 1; y < a.n; ++y)
        if (f[x] == f[y]) return false;
  return true;
}

inline bool dense_hom_exists(const Dense& a, const Dense& b, Kind kind) {
  return for_each_map(a.n, b.n, [&](const std::vector<Element>& f) { return dense_check(a, b, f, kind); });
}

/// Shadow membership by exhaustive search over every covering assignment of
/// nonempty colour subsets. `members` are structures over the base relations
/// of `a` followed by `colors` unary relations.
inline bool covering_shadow_member(const Structure& a, const liftshadow::Signature& extended, std::size_t colors,
                                   const std::vector<Structure>& members, Kind kind) {
  std::vector<Dense> dm;
  for (const auto& m : members) dm.emplace_back(m);
  const std::size_t nb = a.signature().size();
  const std::size_t subsets = (std::size_t{1} << colors) - 1;
  return for_each_map(a.size(), subsets, [&](const std::vector<Element>& pick) {
    liftshadow::StructureBuilder b(extended, a.size());
    for (std::size_t r = 0; r < nb; ++r)
      for (auto t : a.tuples(r)) b.add(r, t);
    for (Element v = 0; v < a.size(); ++v)
      for (std::size_t c = 0; c < colors; ++c)
        if (((pick[v] + 1) >> c) & 1U) b.add(nb + c, {v});
    const Dense lift(std::move(b).build());
    for (const auto& m : dm)
      if (dense_hom_exists(m, lift, kind)) return false;
    return true;
  });
}

}  // namespace oracle
