// ofdma-cci: downlink co-channel interference statistics for OFDMA cellular systems
// Copyright 2026 The ofdma-cci Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

namespace cci {

/// SplitMix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Seed of chunk `chunk` of stream `stream` under user seed `seed`. Every
/// chunk owns an independent engine, so results do not depend on how chunks
/// are spread over workers.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t chunk) noexcept {
    return mix64(mix64(mix64(seed) ^ (stream * 0xd1b54a32d192ed03ull)) ^ chunk);
}

using Engine = std::mt19937_64;

inline constexpr std::size_t chunk_size = 1u << 16;

inline std::size_t chunk_count(std::size_t n) noexcept { return (n + chunk_size - 1) / chunk_size; }

/// Runs fn(chunk_index) for every chunk, striding chunks over `workers`
/// threads. fn must only write state owned by its chunk.
template <class F>
void for_each_chunk(std::size_t chunks, unsigned workers, F &&fn) {
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(chunks, 1))));
    if (workers == 1) {
        for (std::size_t c = 0; c < chunks; ++c)
            fn(c);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t c = w; c < chunks; c += workers)
                fn(c);
        });
}

inline unsigned default_workers() noexcept { return std::max(1u, std::thread::hardware_concurrency()); }

} // namespace cci
