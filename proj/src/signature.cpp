#include "liftshadow/signature.hpp"

#include <set>

#include "liftshadow/errors.hpp"

namespace liftshadow {

Signature::Signature(std::vector<Relation> relations) : relations_(std::move(relations)) {
  std::set<std::string_view> names;
  for (const auto& r : relations_) {
    if (r.name.empty()) throw FormatError("relation name must be nonempty");
    if (r.arity == 0) throw FormatError("relation '" + r.name + "' has arity 0");
    if (!names.insert(r.name).second) throw FormatError("duplicate relation name '" + r.name + "'");
  }
}

Signature Signature::digraph(bool symmetric) { return Signature({Relation{"E", 2, symmetric}}); }

std::optional<std::size_t> Signature::find(std::string_view name) const {
  for (std::size_t i = 0; i < relations_.size(); ++i)
    if (relations_[i].name == name) return i;
  return std::nullopt;
}

bool Signature::compatible(const Signature& other) const {
  if (size() != other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (relations_[i].name != other[i].name || relations_[i].arity != other[i].arity) return false;
  return true;
}

Signature Signature::without_symmetry() const {
  auto rels = relations_;
  for (auto& r : rels) r.symmetric = false;
  return Signature(std::move(rels));
}

Signature Signature::extended(const std::vector<Relation>& extra) const {
  auto rels = relations_;
  rels.insert(rels.end(), extra.begin(), extra.end());
  return Signature(std::move(rels));
}

Signature Signature::prefix(std::size_t count) const {
  return Signature(std::vector<Relation>(relations_.begin(), relations_.begin() + static_cast<std::ptrdiff_t>(count)));
}

void require_compatible(const Signature& a, const Signature& b, std::string_view what) {
  if (!a.compatible(b)) throw SignatureMismatch(std::string(what) + ": signatures differ");
}

}  // namespace liftshadow
