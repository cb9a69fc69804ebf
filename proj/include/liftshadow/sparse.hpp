#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "liftshadow/hom.hpp"
#include "liftshadow/io.hpp"
#include "liftshadow/structure.hpp"

namespace liftshadow {

struct SparseRequest {
  Structure a;
  std::size_t k = 2;       // largest target size
  std::size_t girth = 3;   // required incidence girth
  /// Copies per element; default max(8, |A| * girth).
  std::optional<std::size_t> copies;
  /// Probability of keeping a candidate block; default N^(1 - r + 1/girth)
  /// for a block of arity r, so each tuple of A spawns about N^(1 + 1/girth).
  std::optional<double> probability;
  std::size_t max_retries = 30;
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultBudget;  // per homomorphism search
  unsigned jobs = 1;
};

struct SparseResult {
  Structure b;
  Hom projection;                      // b -> a, copy (x, i) to x
  std::optional<std::size_t> girth_achieved;  // nullopt: acyclic
  std::size_t targets_checked = 0;
  std::size_t retries_used = 0;
  std::size_t copies = 0;              // N of the successful attempt
  std::uint64_t seed = 0;
};

/// All retries failed. Counts say how often each condition failed.
class SparseFailure : public std::runtime_error {
 public:
  SparseFailure(std::size_t attempts, std::size_t projection_failures, std::size_t girth_failures,
                std::size_t target_failures);
  std::size_t attempts, projection_failures, girth_failures, target_failures;
};

/// Random high-girth cover of A that no structure with at most k elements
/// tells apart from A. Every returned B has been checked against all targets.
SparseResult sparsify(const SparseRequest& request);

/// {"structure":...,"projection":[...],"report":{...}} with the seed echoed.
Json sparse_result_to_json(const SparseResult& r);
SparseResult sparse_result_from_json(const Json& j);

}  // namespace liftshadow
