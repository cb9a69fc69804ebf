#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace liftshadow::detail {

/// Smallest index i < count with hit(i), evaluating indices on up to `jobs`
/// threads. An exception thrown at index i counts as an event at i: the
/// lowest-indexed event wins, so the outcome does not depend on scheduling.
inline std::optional<std::size_t> first_hit(std::size_t count, unsigned jobs,
                                            const std::function<bool(std::size_t)>& hit) {
  if (jobs <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i)
      if (hit(i)) return i;
    return std::nullopt;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{count};
  std::mutex mu;
  std::size_t error_at = count;
  std::exception_ptr error;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || i >= best.load()) return;
      try {
        if (hit(i)) {
          std::size_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {}
        }
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < error_at) {
          error_at = i;
          error = std::current_exception();
        }
        std::size_t cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {}
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(jobs, count); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error && error_at <= best.load()) std::rethrow_exception(error);
  if (best.load() < count) return best.load();
  return std::nullopt;
}

}  // namespace liftshadow::detail
