#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace domainsmith {

// Applies fn(item, index) over items with at most max_in_flight concurrent
// calls and returns results in input order. If calls throw, the exception
// with the smallest index is rethrown after all workers stop.
template <typename T, typename Fn>
auto parallel_ordered_map(const std::vector<T>& items, unsigned max_in_flight, Fn fn)
    -> std::vector<decltype(fn(items[std::size_t{0}], std::size_t{0}))> {
  using Out = decltype(fn(items[std::size_t{0}], std::size_t{0}));
  std::vector<Out> out(items.size());
  if (items.empty()) return out;

  std::size_t workers = std::min<std::size_t>(max_in_flight < 1 ? 1 : max_in_flight, items.size());
  if (workers == 1) {
    for (std::size_t i = 0; i < items.size(); ++i) out[i] = fn(items[i], i);
    return out;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex err_mutex;
  std::exception_ptr error;
  std::size_t error_index = static_cast<std::size_t>(-1);

  auto work = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= items.size() || failed.load(std::memory_order_relaxed)) return;
      try {
        out[i] = fn(items[i], i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
        failed.store(true, std::memory_order_relaxed);
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace domainsmith
