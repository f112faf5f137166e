// Copyright 2026 The pircache Authors
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

#ifndef PIRCACHE_RNG_H_
#define PIRCACHE_RNG_H_

#include <cstdint>
#include <random>

namespace pircache {

// All randomness in the library flows through this engine so that a run is
// reproducible from a single 64-bit seed.
using Rng = std::mt19937_64;

// SplitMix64 finalizer. Used to derive independent sub-stream seeds.
inline std::uint64_t MixSeed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Sub-stream `index` of `seed`: MixSeed(MixSeed(seed) ^ index). Sharded
// simulations seed worker w with SubstreamSeed(seed, w).
inline std::uint64_t SubstreamSeed(std::uint64_t seed, std::uint64_t index) {
  return MixSeed(MixSeed(seed) ^ (index * 0xd6e8feb86659fd93ULL));
}

inline Rng MakeRng(std::uint64_t seed) { return Rng(MixSeed(seed)); }

}  // namespace pircache

#endif  // PIRCACHE_RNG_H_
