#pragma once

#include <cstdint>
#include <vector>

#include "liftshadow/structure.hpp"

namespace liftshadow {

/// Bit string over every possible tuple, relation-major, tuples in
/// lexicographic order; bit 0 is the most significant bit of word 0, so
/// comparing the word vectors compares the bit strings.
using Encoding = std::vector<std::uint64_t>;

Encoding encode(const Structure& s);
Structure decode(const Signature& sig, std::size_t size, const Encoding& code);

struct CanonicalLabeling {
  std::vector<Element> perm;  // perm[old] = new label
  Encoding code;              // encoding of relabel(s, perm)
};

/// Least encoding over all relabelings, found by colour refinement plus
/// individualization. Exact; cost grows with the automorphism group, which
/// is fine at the sizes used here.
CanonicalLabeling canonical_labeling(const Structure& s);
Structure canonical_form(const Structure& s);
bool isomorphic(const Structure& a, const Structure& b);

/// Order used for every deterministic listing: size, then encoding.
bool canonical_less(const Structure& a, const Structure& b);

}  // namespace liftshadow
