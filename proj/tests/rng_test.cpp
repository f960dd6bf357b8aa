// Copyright 2026 The ldp-trilemma Authors
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

#include "trilemma/rng.hpp"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

namespace trilemma {
namespace {

TEST(Rng, DeterministicPerSeed) {
  Rng a(123), b(123), c(124);
  bool differ = false;
  for (int i = 0; i < 64; ++i) {
    const std::uint64_t va = a.next_u64();
    EXPECT_EQ(va, b.next_u64());
    differ |= va != c.next_u64();
  }
  EXPECT_TRUE(differ);
}

TEST(Rng, BoundedDrawStaysInRange) {
  Rng rng(9);
  for (std::uint64_t range : {1ull, 2ull, 3ull, 7ull, 100ull, 1ull << 40}) {
    for (int i = 0; i < 200; ++i) ASSERT_LT(rng.next_below(range), range);
  }
  EXPECT_THROW(rng.next_below(0), std::invalid_argument);
}

TEST(Rng, BoundedDrawIsUniform) {
  Rng rng(77);
  const std::uint64_t range = 5;
  const int trials = 100000;
  std::vector<int> counts(range, 0);
  for (int i = 0; i < trials; ++i) counts[rng.next_below(range)]++;
  // chi-square, 4 dof, 1% critical value 13.28
  double chi = 0.0;
  const double expected = trials / static_cast<double>(range);
  for (int c : counts) chi += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi, 13.28);
}

TEST(Rng, NormalMoments) {
  Rng rng(31);
  const int trials = 200000;
  double m1 = 0, m2 = 0, m4 = 0;
  for (int i = 0; i < trials; ++i) {
    const double z = rng.next_normal();
    m1 += z;
    m2 += z * z;
    m4 += z * z * z * z;
  }
  m1 /= trials;
  m2 /= trials;
  m4 /= trials;
  EXPECT_NEAR(m1, 0.0, 0.01);
  EXPECT_NEAR(m2, 1.0, 0.02);
  EXPECT_NEAR(m4, 3.0, 0.1);
}

TEST(DeriveKey, SeparatesStreams) {
  EXPECT_NE(derive_key(1, 2, 3), derive_key(1, 2, 4));
  EXPECT_NE(derive_key(1, 2, 3), derive_key(1, 3, 2));
  EXPECT_NE(derive_key(1, 2, 3), derive_key(2, 2, 3));
  EXPECT_EQ(derive_key(1, 2, 3), derive_key(1, 2, 3));
}

}  // namespace
}  // namespace trilemma
