// Copyright 2026 The Authors.
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

#ifndef IMRANK_PARALLEL_HPP_
#define IMRANK_PARALLEL_HPP_

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace imrank::detail {

inline unsigned resolve_threads(unsigned requested, std::size_t work) {
  unsigned t = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(work, 1)));
}

/// Calls body(chunk, begin, end) over `threads` contiguous chunks of
/// [0, count). Callers reduce per-chunk results with exact (integer)
/// arithmetic so the outcome does not depend on the split.
template <class Body>
void for_chunks(std::size_t count, unsigned threads, Body&& body) {
  if (threads <= 1 || count < 2) {
    body(std::size_t{0}, std::size_t{0}, count);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned c = 0; c < threads; ++c) {
    const std::size_t begin = count * c / threads;
    const std::size_t end = count * (c + 1) / threads;
    pool.emplace_back([&body, c, begin, end] { body(std::size_t{c}, begin, end); });
  }
}

}  // namespace imrank::detail

#endif  // IMRANK_PARALLEL_HPP_
