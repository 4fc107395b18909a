// Copyright 2026 The fracspec Authors
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

#ifndef FRACSPEC_PARALLEL_H_
#define FRACSPEC_PARALLEL_H_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace fracspec {

// Splits [0, count) into `threads` contiguous blocks and calls
// body(block, begin, end) for each, one worker per block. Block boundaries
// depend only on `count` and `threads`, so callers that reduce per-block
// results in block order get the same answer for any scheduling.
template <typename Body>
void ParallelBlocks(std::size_t count, unsigned threads, Body&& body) {
  const std::size_t blocks =
      std::max<std::size_t>(1, std::min<std::size_t>(threads == 0 ? 1 : threads, count));
  if (blocks == 1) {
    body(std::size_t{0}, std::size_t{0}, count);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(blocks);
  workers.reserve(blocks);
  for (std::size_t k = 0; k < blocks; ++k) {
    const std::size_t begin = count * k / blocks;
    const std::size_t end = count * (k + 1) / blocks;
    workers.emplace_back([&, k, begin, end] {
      try {
        body(k, begin, end);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

inline std::size_t BlockCount(std::size_t count, unsigned threads) {
  return std::max<std::size_t>(1, std::min<std::size_t>(threads == 0 ? 1 : threads, count));
}

}  // namespace fracspec

#endif  // FRACSPEC_PARALLEL_H_
