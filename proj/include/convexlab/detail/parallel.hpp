// Copyright 2026 The convexlab Authors.
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
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

namespace convexlab::detail {

/// Engine for one chunk of one stream; independent of worker count.
inline std::mt19937_64 chunk_engine(std::uint64_t seed, std::uint64_t stream, std::uint64_t chunk) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
  return std::mt19937_64(seq);
}

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double unit_uniform(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

/// Evaluates f(c) for c in [0, count) on `workers` threads; results in chunk order.
template <typename Result, typename F>
std::vector<Result> map_chunks(std::int64_t count, int workers, F&& f) {
  std::vector<Result> out(static_cast<std::size_t>(count));
  workers = std::max(1, std::min<int>(workers, static_cast<int>(std::max<std::int64_t>(count, 1))));
  if (workers == 1) {
    for (std::int64_t c = 0; c < count; ++c) out[c] = f(c);
    return out;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::int64_t c = next++; c < count; c = next++) out[c] = f(c);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

/// Ordered pairwise reduction.
template <typename T, typename Add>
T pairwise_reduce(std::vector<T> items, Add add) {
  if (items.empty()) return T{};
  while (items.size() > 1) {
    std::vector<T> next;
    next.reserve((items.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < items.size(); i += 2) next.push_back(add(items[i], items[i + 1]));
    if (items.size() % 2) next.push_back(std::move(items.back()));
    items = std::move(next);
  }
  return std::move(items.front());
}

}  // namespace convexlab::detail
