#include "liftshadow/structure.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "liftshadow/errors.hpp"

namespace liftshadow {

namespace {

// Sorts the flat tuple list of one relation and drops duplicates.
void normalize_tuples(std::vector<Element>& data, std::size_t arity) {
  const std::size_t count = data.size() / arity;
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  auto less = [&](std::size_t x, std::size_t y) {
    return std::lexicographical_compare(data.begin() + x * arity, data.begin() + (x + 1) * arity,
                                        data.begin() + y * arity, data.begin() + (y + 1) * arity);
  };
  if (!std::is_sorted(order.begin(), order.end(), less)) std::sort(order.begin(), order.end(), less);
  std::vector<Element> out;
  out.reserve(data.size());
  for (std::size_t k = 0; k < count; ++k) {
    const auto* t = data.data() + order[k] * arity;
    if (!out.empty() && std::equal(t, t + arity, out.end() - static_cast<std::ptrdiff_t>(arity))) continue;
    out.insert(out.end(), t, t + arity);
  }
  data = std::move(out);
}

}  // namespace

Structure::Structure(Signature sig, std::size_t size) : sig_(std::move(sig)), size_(size), data_(sig_.size()) {}

std::size_t Structure::tuple_count() const {
  std::size_t total = 0;
  for (std::size_t r = 0; r < sig_.size(); ++r) total += tuple_count(r);
  return total;
}

bool Structure::contains(std::size_t relation, std::span<const Element> tuple) const {
  const auto range = tuples(relation);
  if (tuple.size() != sig_[relation].arity) return false;
  auto it = std::lower_bound(range.begin(), range.end(), tuple, [](std::span<const Element> a, std::span<const Element> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  return it != range.end() && std::equal(tuple.begin(), tuple.end(), (*it).begin());
}

Structure Structure::with_signature(Signature sig) const {
  require_compatible(sig_, sig, "with_signature");
  StructureBuilder b(std::move(sig), size_);
  for (std::size_t r = 0; r < sig_.size(); ++r)
    for (auto t : tuples(r)) b.add(r, t);
  return std::move(b).build();
}

StructureBuilder::StructureBuilder(Signature sig, std::size_t size) : out_(std::move(sig), size) {}

StructureBuilder& StructureBuilder::add(std::size_t relation, std::span<const Element> tuple) {
  if (relation >= out_.sig_.size()) throw FormatError("relation index out of range");
  const auto& rel = out_.sig_[relation];
  if (tuple.size() != rel.arity)
    throw FormatError("tuple of length " + std::to_string(tuple.size()) + " in relation '" + rel.name + "' of arity " +
                      std::to_string(rel.arity));
  for (Element e : tuple)
    if (e >= out_.size_)
      throw FormatError("element " + std::to_string(e) + " out of range for universe of size " + std::to_string(out_.size_));
  auto& d = out_.data_[relation];
  d.insert(d.end(), tuple.begin(), tuple.end());
  return *this;
}

StructureBuilder& StructureBuilder::add_symmetric(std::size_t relation, std::span<const Element> tuple) {
  add(relation, tuple);
  std::vector<Element> rev(tuple.rbegin(), tuple.rend());
  return add(relation, rev);
}

StructureBuilder& StructureBuilder::close_symmetric() {
  for (std::size_t r = 0; r < out_.sig_.size(); ++r) {
    if (!out_.sig_[r].symmetric) continue;
    auto& d = out_.data_[r];
    const std::size_t k = out_.sig_[r].arity;
    const std::size_t count = d.size() / k;
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = 0; j < k; ++j) d.push_back(d[i * k + (k - 1 - j)]);
  }
  return *this;
}

Structure StructureBuilder::build() && {
  for (std::size_t r = 0; r < out_.sig_.size(); ++r) {
    normalize_tuples(out_.data_[r], out_.sig_[r].arity);
    if (!out_.sig_[r].symmetric) continue;
    const std::size_t k = out_.sig_[r].arity;
    std::vector<Element> rev(k);
    for (auto t : out_.tuples(r)) {
      std::reverse_copy(t.begin(), t.end(), rev.begin());
      if (!out_.contains(r, rev))
        throw FormatError("relation '" + out_.sig_[r].name + "' is flagged symmetric but is not closed under reversal");
    }
  }
  return std::move(out_);
}

Structure StructureBuilder::build() const& {
  StructureBuilder copy = *this;
  return std::move(copy).build();
}

Structure make_digraph(std::size_t n, const std::vector<std::pair<Element, Element>>& arcs) {
  StructureBuilder b(Signature::digraph(), n);
  for (auto [u, v] : arcs) b.add(0, {u, v});
  return std::move(b).build();
}

Structure make_digraph(std::size_t n, std::initializer_list<std::pair<Element, Element>> arcs) {
  return make_digraph(n, std::vector<std::pair<Element, Element>>(arcs));
}

Structure make_graph(std::size_t n, const std::vector<std::pair<Element, Element>>& edges) {
  StructureBuilder b(Signature::digraph(true), n);
  for (auto [u, v] : edges) b.add_symmetric(0, {u, v});
  return std::move(b).build();
}

Structure directed_path(std::size_t arcs) {
  std::vector<std::pair<Element, Element>> a;
  for (Element i = 0; i < arcs; ++i) a.emplace_back(i, i + 1);
  return make_digraph(arcs + 1, a);
}

Structure directed_cycle(std::size_t n) {
  std::vector<std::pair<Element, Element>> a;
  for (Element i = 0; i < n; ++i) a.emplace_back(i, static_cast<Element>((i + 1) % n));
  return make_digraph(n, a);
}

Structure transitive_tournament(std::size_t n) {
  std::vector<std::pair<Element, Element>> a;
  for (Element i = 0; i < n; ++i)
    for (Element j = i + 1; j < n; ++j) a.emplace_back(i, j);
  return make_digraph(n, a);
}

Structure complete_graph(std::size_t n) {
  std::vector<std::pair<Element, Element>> e;
  for (Element i = 0; i < n; ++i)
    for (Element j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return make_graph(n, e);
}

Structure cycle_graph(std::size_t n) {
  std::vector<std::pair<Element, Element>> e;
  for (Element i = 0; i < n; ++i) e.emplace_back(i, static_cast<Element>((i + 1) % n));
  return make_graph(n, e);
}

Structure looped_vertex(bool symmetric) {
  StructureBuilder b(Signature::digraph(symmetric), 1);
  b.add(0, {0, 0});
  return std::move(b).build();
}

Structure terminal_structure(const Signature& sig) {
  StructureBuilder b(sig, 1);
  for (std::size_t r = 0; r < sig.size(); ++r) b.add(r, std::vector<Element>(sig[r].arity, 0));
  return std::move(b).build();
}

Structure induced_substructure(const Structure& s, std::span<const Element> elements) {
  std::vector<Element> index(s.size(), static_cast<Element>(-1));
  for (std::size_t i = 0; i < elements.size(); ++i) index[elements[i]] = static_cast<Element>(i);
  StructureBuilder b(s.signature(), elements.size());
  std::vector<Element> mapped;
  for (std::size_t r = 0; r < s.signature().size(); ++r) {
    for (auto t : s.tuples(r)) {
      mapped.clear();
      bool inside = true;
      for (Element e : t) {
        if (index[e] == static_cast<Element>(-1)) { inside = false; break; }
        mapped.push_back(index[e]);
      }
      if (inside) b.add(r, mapped);
    }
  }
  return std::move(b).build();
}

Structure relabel(const Structure& s, std::span<const Element> perm) {
  StructureBuilder b(s.signature(), s.size());
  std::vector<Element> mapped;
  for (std::size_t r = 0; r < s.signature().size(); ++r) {
    for (auto t : s.tuples(r)) {
      mapped.clear();
      for (Element e : t) mapped.push_back(perm[e]);
      b.add(r, mapped);
    }
  }
  return std::move(b).build();
}

Structure product(const Structure& a, const Structure& b) {
  require_compatible(a.signature(), b.signature(), "product");
  std::vector<Relation> rels = a.signature().relations();
  for (std::size_t r = 0; r < rels.size(); ++r) rels[r].symmetric = rels[r].symmetric && b.signature()[r].symmetric;
  StructureBuilder out(Signature(std::move(rels)), a.size() * b.size());
  std::vector<Element> t;
  const auto nb = static_cast<Element>(b.size());
  for (std::size_t r = 0; r < a.signature().size(); ++r) {
    for (auto ta : a.tuples(r)) {
      for (auto tb : b.tuples(r)) {
        t.clear();
        for (std::size_t i = 0; i < ta.size(); ++i) t.push_back(ta[i] * nb + tb[i]);
        out.add(r, t);
      }
    }
  }
  return std::move(out).build();
}

Structure disjoint_union(const Structure& a, const Structure& b) {
  require_compatible(a.signature(), b.signature(), "disjoint_union");
  StructureBuilder out(a.signature(), a.size() + b.size());
  std::vector<Element> t;
  const auto shift = static_cast<Element>(a.size());
  for (std::size_t r = 0; r < a.signature().size(); ++r) {
    for (auto ta : a.tuples(r)) out.add(r, ta);
    for (auto tb : b.tuples(r)) {
      t.assign(tb.begin(), tb.end());
      for (auto& e : t) e += shift;
      out.add(r, t);
    }
  }
  return std::move(out).build();
}

std::vector<std::vector<Element>> component_elements(const Structure& s) {
  std::vector<Element> parent(s.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Element x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t r = 0; r < s.signature().size(); ++r)
    for (auto t : s.tuples(r))
      for (std::size_t i = 1; i < t.size(); ++i) {
        Element x = find(t[0]), y = find(t[i]);
        if (x != y) parent[std::max(x, y)] = std::min(x, y);
      }
  std::vector<std::vector<Element>> out;
  std::vector<std::size_t> slot(s.size(), static_cast<std::size_t>(-1));
  for (Element e = 0; e < s.size(); ++e) {
    Element root = find(e);
    if (slot[root] == static_cast<std::size_t>(-1)) {
      slot[root] = out.size();
      out.emplace_back();
    }
    out[slot[root]].push_back(e);
  }
  return out;
}

std::vector<Structure> components(const Structure& s) {
  std::vector<Structure> out;
  for (const auto& c : component_elements(s)) out.push_back(induced_substructure(s, c));
  return out;
}

}  // namespace liftshadow
