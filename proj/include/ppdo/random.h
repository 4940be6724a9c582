// Copyright 2026 The ppdo Authors
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

// Counter-based randomness. Every Gaussian draw is a pure function of a
// 64-bit seed and a 4-word counter, so any single draw can be reproduced
// without replaying a stream.

#ifndef PPDO_RANDOM_H_
#define PPDO_RANDOM_H_

#include <array>
#include <cstdint>

namespace ppdo {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

// Philox4x32 with 10 rounds (Salmon et al., SC'11).
PhiloxCounter Philox4x32(PhiloxCounter counter, PhiloxKey key);

PhiloxKey KeyFromSeed(std::uint64_t seed);

// Standard normal via Box-Muller on one Philox block.
double StandardNormal(std::uint64_t seed, const PhiloxCounter& counter);

// SplitMix64 finaliser applied to (seed, stream); used to derive independent
// per-trial seeds.
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream);

}  // namespace ppdo

#endif  // PPDO_RANDOM_H_
