#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace liftshadow {

struct Relation {
  std::string name;
  std::size_t arity = 2;
  // Metadata only: symmetric relations pair each tuple with its reversal in
  // incidence analysis and restrict the class of admissible structures. It
  // never changes homomorphism semantics.
  bool symmetric = false;

  bool operator==(const Relation&) const = default;
};

/// Ordered list of named relations. Relation indices are positions in it.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<Relation> relations);

  static Signature digraph(bool symmetric = false);

  std::size_t size() const { return relations_.size(); }
  bool empty() const { return relations_.empty(); }
  const Relation& operator[](std::size_t i) const { return relations_[i]; }
  const std::vector<Relation>& relations() const { return relations_; }
  std::optional<std::size_t> find(std::string_view name) const;

  /// Same names and arities in the same order; symmetric flags may differ.
  bool compatible(const Signature& other) const;
  Signature without_symmetry() const;
  /// Appends relations; names must stay unique.
  Signature extended(const std::vector<Relation>& extra) const;
  /// The first `count` relations.
  Signature prefix(std::size_t count) const;

  bool operator==(const Signature&) const = default;

 private:
  std::vector<Relation> relations_;
};

void require_compatible(const Signature& a, const Signature& b, std::string_view what);

}  // namespace liftshadow
