// Copyright 2026 The minq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MINQ_RNG_HPP
#define MINQ_RNG_HPP

#include <cstdint>
#include <random>

namespace minq {

/// SplitMix64 finalizer; used to derive statistically independent
/// substream seeds from a master seed and a stream index.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Deterministic substream seed for (master, stream). Chaining calls
/// extends the scheme to more indices: derive_seed(derive_seed(s, a), b).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(splitmix64(master) ^ splitmix64(stream * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL));
}

using RngEngine = std::mt19937_64;

}  // namespace minq

#endif  // MINQ_RNG_HPP
