#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace ratiokit {

/// Worker count from RATIOKIT_WORKERS, else hardware concurrency (>= 1).
std::size_t default_worker_count();

/// Splits [0, count) into fixed blocks of `block_size` indices, processes
/// blocks on `workers` threads and folds the per-block accumulators in
/// block order. Because block boundaries do not depend on the worker count
/// and the fold order is fixed, the result is bit-identical for any number
/// of workers.
///
///   make()                -> Acc
///   visit(Acc&, index)
///   fold(Acc& into, Acc&& block)
template <class Make, class Visit, class Fold>
auto deterministic_reduce(std::size_t count, std::size_t block_size,
                          std::size_t workers, Make make, Visit visit, Fold fold) {
  using Acc = decltype(make());
  block_size = std::max<std::size_t>(block_size, 1);
  const std::size_t blocks = (count + block_size - 1) / block_size;
  std::vector<std::optional<Acc>> partial(blocks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= blocks) return;
      try {
        Acc acc = make();
        const std::size_t end = std::min(count, (b + 1) * block_size);
        for (std::size_t i = b * block_size; i < end; ++i) visit(acc, i);
        partial[b].emplace(std::move(acc));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(blocks);
        return;
      }
    }
  };

  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(blocks, 1));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  Acc total = make();
  for (auto& p : partial) fold(total, std::move(*p));
  return total;
}

}  // namespace ratiokit
