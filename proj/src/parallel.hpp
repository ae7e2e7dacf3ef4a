#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace qcorr::detail {

// Runs body(i) for i in [0, count). Each index is handled exactly once; when
// several indices throw, the exception from the smallest index is rethrown so
// failures do not depend on scheduling.
template <typename Body>
void parallel_for(std::size_t count, bool parallel, Body&& body) {
  std::vector<std::exception_ptr> errors(count);
  const auto run_one = [&](std::size_t i) {
    try {
      body(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  const std::size_t workers =
      parallel ? std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency())) : 1;
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) run_one(i);
      });
    }
  }

  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace qcorr::detail
