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

#include "ppdo/random.h"

#include <cmath>
#include <set>

#include <gtest/gtest.h>

namespace ppdo {
namespace {

// Known-answer vectors published with the Random123 library.
TEST(PhiloxTest, KnownAnswers) {
  EXPECT_EQ(Philox4x32({0, 0, 0, 0}, {0, 0}),
            (PhiloxCounter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
  EXPECT_EQ(Philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                       {0xffffffffu, 0xffffffffu}),
            (PhiloxCounter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
  EXPECT_EQ(Philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                       {0xa4093822u, 0x299f31d0u}),
            (PhiloxCounter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(StandardNormalTest, DeterministicPerCounter) {
  EXPECT_EQ(StandardNormal(42, {1, 2, 3, 4}), StandardNormal(42, {1, 2, 3, 4}));
  EXPECT_NE(StandardNormal(42, {1, 2, 3, 4}), StandardNormal(43, {1, 2, 3, 4}));
  EXPECT_NE(StandardNormal(42, {1, 2, 3, 4}), StandardNormal(42, {1, 2, 3, 5}));
}

TEST(StandardNormalTest, Moments) {
  constexpr int kDraws = 200000;
  double sum = 0.0;
  double sum_sq = 0.0;
  double sum_4 = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    const double z = StandardNormal(2024, {static_cast<std::uint32_t>(i), 0, 0, 0});
    sum += z;
    sum_sq += z * z;
    sum_4 += z * z * z * z;
  }
  const double mean = sum / kDraws;
  const double var = sum_sq / kDraws - mean * mean;
  // Standard errors: 1/sqrt(N) for the mean, sqrt(2/N) for the variance.
  EXPECT_LT(std::abs(mean), 4.0 / std::sqrt(kDraws));
  EXPECT_LT(std::abs(var - 1.0), 4.0 * std::sqrt(2.0 / kDraws));
  EXPECT_NEAR(sum_4 / kDraws, 3.0, 0.1);
}

TEST(DeriveSeedTest, DistinctStreams) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 10000; ++s) seen.insert(DeriveSeed(99, s));
  EXPECT_EQ(seen.size(), 10000u);
  EXPECT_NE(DeriveSeed(1, 0), DeriveSeed(2, 0));
}

}  // namespace
}  // namespace ppdo
