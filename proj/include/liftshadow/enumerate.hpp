#pragma once

#include <cstdint>
#include <vector>

#include "liftshadow/structure.hpp"

namespace liftshadow {

struct EnumerationOptions {
  bool up_to_iso = true;
  /// When nonempty, only structures whose every element lies in at least
  /// one of these (unary) relations are produced. Covering is inherited by
  /// induced substructures, so it is applied during generation.
  std::vector<std::size_t> cover_relations;
  /// Upper bound on candidate structures examined.
  std::uint64_t budget = 100'000'000;
};

/// Generates structures level by level (universe size 0, 1, 2, ...). Levels
/// are sorted by encoding; with up_to_iso each level holds one canonical
/// representative per isomorphism class. Symmetric relations only ever
/// receive reversal-closed tuple sets.
class StructureEnumerator {
 public:
  StructureEnumerator(Signature sig, EnumerationOptions options = {});

  /// Size of the level the next call to next_level() produces.
  std::size_t next_size() const { return next_size_; }
  std::vector<Structure> next_level();
  std::uint64_t candidates_examined() const { return examined_; }

 private:
  std::vector<Structure> labeled_level(std::size_t n);
  std::vector<Structure> iso_level(std::size_t n);
  bool covered(const Structure& s, Element e) const;

  Signature sig_;
  EnumerationOptions options_;
  std::size_t next_size_ = 0;
  std::vector<Structure> previous_;
  std::uint64_t examined_ = 0;
};

/// Every structure with universe size 0..n_max, in the enumerator's order.
std::vector<Structure> enumerate_structures(const Signature& sig, std::size_t n_max, const EnumerationOptions& options = {});

}  // namespace liftshadow
