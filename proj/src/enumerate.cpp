#include "liftshadow/enumerate.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <unordered_set>

#include "liftshadow/canonical.hpp"
#include "liftshadow/errors.hpp"

namespace liftshadow {

namespace {

struct EncodingHash {
  std::size_t operator()(const Encoding& e) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ e.size();
    for (auto w : e) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

struct Orbit {
  std::size_t relation;
  std::vector<std::vector<Element>> tuples;  // one, or a tuple and its reversal
};

// Tuple orbits over {0..n-1}; when `through` is set, only orbits whose
// tuples mention that element.
std::vector<Orbit> tuple_orbits(const Signature& sig, std::size_t n, std::optional<Element> through) {
  std::vector<Orbit> out;
  for (std::size_t r = 0; r < sig.size(); ++r) {
    const std::size_t k = sig[r].arity;
    std::vector<Element> t(k, 0);
    if (n == 0) continue;
    while (true) {
      const bool mentions = !through || std::find(t.begin(), t.end(), *through) != t.end();
      if (mentions) {
        if (sig[r].symmetric) {
          std::vector<Element> rev(t.rbegin(), t.rend());
          if (t <= rev) {
            Orbit o{r, {t}};
            if (rev != t) o.tuples.push_back(rev);
            out.push_back(std::move(o));
          }
        } else {
          out.push_back({r, {t}});
        }
      }
      std::size_t p = k;
      while (p > 0 && t[p - 1] + 1 == n) t[--p] = 0;
      if (p == 0) break;
      ++t[p - 1];
    }
  }
  return out;
}

void charge(std::uint64_t& examined, std::uint64_t budget) {
  if (++examined > budget) throw BudgetExceeded("structure enumeration exceeded its budget");
}

}  // namespace

StructureEnumerator::StructureEnumerator(Signature sig, EnumerationOptions options)
    : sig_(std::move(sig)), options_(std::move(options)) {
  for (auto r : options_.cover_relations)
    if (r >= sig_.size() || sig_[r].arity != 1) throw std::invalid_argument("cover relations must be unary relations of the signature");
}

bool StructureEnumerator::covered(const Structure& s, Element e) const {
  if (options_.cover_relations.empty()) return true;
  for (auto r : options_.cover_relations)
    if (s.contains(r, {e})) return true;
  return false;
}

std::vector<Structure> StructureEnumerator::next_level() {
  const std::size_t n = next_size_++;
  auto level = options_.up_to_iso ? iso_level(n) : labeled_level(n);
  if (options_.up_to_iso) previous_ = level;
  return level;
}

std::vector<Structure> StructureEnumerator::labeled_level(std::size_t n) {
  const auto orbits = tuple_orbits(sig_, n, std::nullopt);
  if (orbits.size() >= 63) throw BudgetExceeded("labeled enumeration space too large");
  std::vector<Structure> out;
  const std::uint64_t count = std::uint64_t{1} << orbits.size();
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    charge(examined_, options_.budget);
    StructureBuilder b(sig_, n);
    for (std::size_t i = 0; i < orbits.size(); ++i)
      if ((mask >> i) & 1U)
        for (const auto& t : orbits[i].tuples) b.add(orbits[i].relation, t);
    Structure s = std::move(b).build();
    bool ok = true;
    for (Element e = 0; e < n && ok; ++e) ok = covered(s, e);
    if (ok) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const Structure& a, const Structure& b) { return encode(a) < encode(b); });
  return out;
}

std::vector<Structure> StructureEnumerator::iso_level(std::size_t n) {
  if (n == 0) {
    charge(examined_, options_.budget);
    return {Structure(sig_, 0)};
  }
  const Element fresh = static_cast<Element>(n - 1);
  const auto orbits = tuple_orbits(sig_, n, fresh);
  if (orbits.size() >= 63) throw BudgetExceeded("augmentation space too large");
  const std::uint64_t count = std::uint64_t{1} << orbits.size();
  std::unordered_set<Encoding, EncodingHash> seen;
  for (const auto& parent : previous_) {
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      charge(examined_, options_.budget);
      StructureBuilder b(sig_, n);
      for (std::size_t r = 0; r < sig_.size(); ++r)
        for (auto t : parent.tuples(r)) b.add(r, t);
      for (std::size_t i = 0; i < orbits.size(); ++i)
        if ((mask >> i) & 1U)
          for (const auto& t : orbits[i].tuples) b.add(orbits[i].relation, t);
      Structure s = std::move(b).build();
      if (!covered(s, fresh)) continue;
      seen.insert(canonical_labeling(s).code);
    }
  }
  std::vector<Encoding> codes(seen.begin(), seen.end());
  std::sort(codes.begin(), codes.end());
  std::vector<Structure> out;
  out.reserve(codes.size());
  for (const auto& c : codes) out.push_back(decode(sig_, n, c));
  return out;
}

std::vector<Structure> enumerate_structures(const Signature& sig, std::size_t n_max, const EnumerationOptions& options) {
  StructureEnumerator en(sig, options);
  std::vector<Structure> out;
  for (std::size_t n = 0; n <= n_max; ++n) {
    auto level = en.next_level();
    std::move(level.begin(), level.end(), std::back_inserter(out));
  }
  return out;
}

}  // namespace liftshadow
