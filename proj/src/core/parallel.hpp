// SPDX-License-Identifier: Apache-2.0

#ifndef MCCM_CORE_PARALLEL_HPP
#define MCCM_CORE_PARALLEL_HPP

#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace mccm {

/// Runs fn(i) for i in [0, count) on up to `threads` workers.  Work items
/// are independent; the first captured exception is rethrown after all
/// workers join.  With threads <= 1 the loop runs inline.
inline void parallel_for(int count, int threads,
                         const std::function<void(int)>& fn) {
  if (count <= 0) {
    return;
  }
  if (threads <= 1 || count == 1) {
    for (int i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }

  const int workers = std::min(threads, count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::atomic_int next{0};

  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count) {
          return;
        }
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) {
            first_error = std::current_exception();
          }
        }
      }
    });
  }
  for (std::thread& t : pool) {
    t.join();
  }
  if (first_error) {
    std::rethrow_exception(first_error);
  }
}

}  // namespace mccm

#endif  // MCCM_CORE_PARALLEL_HPP
