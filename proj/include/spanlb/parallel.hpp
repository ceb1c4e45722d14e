// Copyright 2026 The spanlb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace spanlb {

/// Number of workers used when the caller passes 0.
inline unsigned default_thread_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs body(i) for every i in [0, count) on up to `threads` workers.
/// Indices are handed out dynamically; the first exception thrown by any
/// worker is rethrown on the calling thread after all workers stop.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  if (threads == 0) threads = default_thread_count();
  const std::size_t workers = std::min<std::size_t>(threads, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto run = [&] {
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) return;
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };

  {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
  }
  if (error) std::rethrow_exception(error);
}

/// Splits [0, count) into contiguous chunks and runs body(begin, end) on each,
/// so a body can set up per-chunk scratch space once.
template <typename Body>
void parallel_chunks(std::size_t count, unsigned threads, Body&& body) {
  if (threads == 0) threads = default_thread_count();
  if (count == 0) return;
  const std::size_t chunk =
      std::max<std::size_t>(1, count / (std::size_t{threads} * 8));
  const std::size_t chunks = (count + chunk - 1) / chunk;
  parallel_for(chunks, threads, [&](std::size_t c) {
    const std::size_t begin = c * chunk;
    body(begin, std::min(count, begin + chunk));
  });
}

}  // namespace spanlb
