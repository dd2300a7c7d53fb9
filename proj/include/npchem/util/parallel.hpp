// Copyright 2026 The npchem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

namespace npchem {

/// Worker count from NPCHEM_JOBS, defaulting to 1.
inline unsigned default_jobs() {
  if (const char* env = std::getenv("NPCHEM_JOBS")) {
    try {
      const long value = std::stol(env);
      if (value > 0) return static_cast<unsigned>(value);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

/// Apply `fn` to every element and return results in input order. Work is
/// split into contiguous chunks, one per thread.
template <typename Input, typename Fn>
auto parallel_map(const std::vector<Input>& items, Fn fn, unsigned jobs)
    -> std::vector<std::invoke_result_t<Fn, const Input&>> {
  using Output = std::invoke_result_t<Fn, const Input&>;
  std::vector<Output> out(items.size());
  const std::size_t n = items.size();
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(jobs, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(items[i]);
    return out;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        for (std::size_t i = begin; i < end; ++i) out[i] = fn(items[i]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace npchem
