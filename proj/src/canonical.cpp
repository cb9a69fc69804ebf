#include "liftshadow/canonical.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "liftshadow/errors.hpp"

namespace liftshadow {

namespace {

std::size_t power(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

std::vector<std::size_t> relation_offsets(const Signature& sig, std::size_t n, std::size_t& total) {
  std::vector<std::size_t> off(sig.size());
  total = 0;
  for (std::size_t r = 0; r < sig.size(); ++r) {
    off[r] = total;
    total += power(n, sig[r].arity);
  }
  return off;
}

inline void set_bit(Encoding& code, std::size_t i) { code[i / 64] |= std::uint64_t{1} << (63 - i % 64); }
inline bool get_bit(const Encoding& code, std::size_t i) { return (code[i / 64] >> (63 - i % 64)) & 1U; }

template <class Map>
Encoding encode_with(const Structure& s, Map map) {
  std::size_t total = 0;
  const auto off = relation_offsets(s.signature(), s.size(), total);
  Encoding code((total + 63) / 64, 0);
  const std::size_t n = s.size();
  for (std::size_t r = 0; r < s.signature().size(); ++r) {
    for (auto t : s.tuples(r)) {
      std::size_t idx = 0;
      for (Element e : t) idx = idx * n + map(e);
      set_bit(code, off[r] + idx);
    }
  }
  return code;
}

struct Occurrence {
  std::uint32_t relation;
  std::uint32_t tuple;
  std::uint32_t position;
};

class Canonizer {
 public:
  explicit Canonizer(const Structure& s) : s_(s), occ_(s.size()) {
    for (std::size_t r = 0; r < s.signature().size(); ++r) {
      auto range = s.tuples(r);
      for (std::size_t i = 0; i < range.size(); ++i) {
        auto t = range[i];
        for (std::size_t p = 0; p < t.size(); ++p)
          occ_[t[p]].push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(p)});
      }
    }
  }

  CanonicalLabeling run() {
    std::vector<std::uint32_t> colors(s_.size(), 0);
    search(std::move(colors));
    return std::move(*best_);
  }

 private:
  // Equitable-style colour refinement. Colours are ranks of iso-invariant
  // signatures, so the resulting ordered partition is canonical.
  std::vector<std::uint32_t> refine(std::vector<std::uint32_t> colors) const {
    const std::size_t n = s_.size();
    std::size_t cells = count_cells(colors);
    std::vector<std::vector<std::uint32_t>> sig(n);
    std::vector<std::vector<std::uint32_t>> entries;
    while (true) {
      for (std::size_t v = 0; v < n; ++v) {
        entries.clear();
        for (const auto& o : occ_[v]) {
          auto t = s_.tuples(o.relation)[o.tuple];
          std::vector<std::uint32_t> e{o.relation, o.position};
          for (Element x : t) e.push_back(colors[x]);
          entries.push_back(std::move(e));
        }
        std::sort(entries.begin(), entries.end());
        auto& out = sig[v];
        out.assign(1, colors[v]);
        for (const auto& e : entries) out.insert(out.end(), e.begin(), e.end());
      }
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sig[a] < sig[b]; });
      std::vector<std::uint32_t> next(n);
      std::uint32_t rank = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && sig[order[i]] != sig[order[i - 1]]) ++rank;
        next[order[i]] = rank;
      }
      const std::size_t next_cells = n == 0 ? 0 : rank + 1;
      colors = std::move(next);
      if (next_cells == cells) return colors;
      cells = next_cells;
    }
  }

  static std::size_t count_cells(const std::vector<std::uint32_t>& colors) {
    auto c = colors;
    std::sort(c.begin(), c.end());
    return static_cast<std::size_t>(std::unique(c.begin(), c.end()) - c.begin());
  }

  void search(std::vector<std::uint32_t> colors) {
    colors = refine(std::move(colors));
    const std::size_t n = s_.size();
    // First non-singleton cell in colour order.
    std::vector<std::size_t> cell_size(n + 1, 0);
    for (auto c : colors) ++cell_size[c];
    std::optional<std::uint32_t> target;
    for (std::uint32_t c = 0; c < n; ++c)
      if (cell_size[c] > 1) { target = c; break; }
    if (!target) {
      if (++leaves_ > kLeafLimit) throw BudgetExceeded("canonical labeling exceeded its leaf limit");
      std::vector<Element> perm(colors.begin(), colors.end());
      Encoding code = encode_with(s_, [&](Element e) { return perm[e]; });
      if (!best_ || code < best_->code) best_ = CanonicalLabeling{std::move(perm), std::move(code)};
      return;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (colors[v] != *target) continue;
      std::vector<std::uint32_t> split(n);
      for (std::size_t x = 0; x < n; ++x) split[x] = 2 * colors[x] + ((colors[x] == *target && x != v) ? 1 : 0);
      search(std::move(split));
    }
  }

  static constexpr std::size_t kLeafLimit = 20'000'000;
  const Structure& s_;
  std::vector<std::vector<Occurrence>> occ_;
  std::optional<CanonicalLabeling> best_;
  std::size_t leaves_ = 0;
};

}  // namespace

Encoding encode(const Structure& s) {
  return encode_with(s, [](Element e) { return e; });
}

Structure decode(const Signature& sig, std::size_t size, const Encoding& code) {
  std::size_t total = 0;
  const auto off = relation_offsets(sig, size, total);
  StructureBuilder b(sig, size);
  std::vector<Element> t;
  for (std::size_t r = 0; r < sig.size(); ++r) {
    const std::size_t k = sig[r].arity;
    const std::size_t count = power(size, k);
    t.assign(k, 0);
    for (std::size_t idx = 0; idx < count; ++idx) {
      if (get_bit(code, off[r] + idx)) {
        std::size_t rest = idx;
        for (std::size_t p = k; p-- > 0;) {
          t[p] = static_cast<Element>(rest % size);
          rest /= size;
        }
        b.add(r, t);
      }
    }
  }
  return std::move(b).build();
}

CanonicalLabeling canonical_labeling(const Structure& s) {
  if (s.size() == 0) return {{}, encode(s)};
  return Canonizer(s).run();
}

Structure canonical_form(const Structure& s) {
  if (s.size() == 0) return s;
  auto lab = canonical_labeling(s);
  return relabel(s, lab.perm);
}

bool isomorphic(const Structure& a, const Structure& b) {
  if (!a.signature().compatible(b.signature()) || a.size() != b.size()) return false;
  for (std::size_t r = 0; r < a.signature().size(); ++r)
    if (a.tuple_count(r) != b.tuple_count(r)) return false;
  return canonical_labeling(a).code == canonical_labeling(b).code;
}

bool canonical_less(const Structure& a, const Structure& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return encode(a) < encode(b);
}

}  // namespace liftshadow
