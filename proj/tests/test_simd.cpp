/*
 * Copyright 2026 The pyramidplan Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "pyramidplan/simd/depth_kernels.hpp"

namespace pyramidplan::simd {
namespace {

std::vector<Backend> available() {
  std::vector<Backend> out;
  for (Backend b : {Backend::Scalar, Backend::Avx2, Backend::Neon}) {
    if (kernels_for(b)) out.push_back(b);
  }
  return out;
}

// Depth rows with the awkward values the kernels must classify exactly:
// zeros, values equal to the thresholds and their float neighbours.
std::vector<float> random_row(std::mt19937_64& rng, std::size_t n, float free_depth, float threshold) {
  std::uniform_real_distribution<float> d(0.0f, 10.0f);
  std::uniform_int_distribution<int> pick(0, 7);
  std::vector<float> row(n);
  for (float& v : row) {
    switch (pick(rng)) {
      case 0:
        v = 0.0f;
        break;
      case 1:
        v = free_depth;
        break;
      case 2:
        v = threshold;
        break;
      case 3:
        v = std::nextafter(threshold, 100.0f);
        break;
      case 4:
        v = std::nextafter(free_depth, 100.0f);
        break;
      default:
        v = d(rng);
    }
  }
  return row;
}

TEST(DepthKernels, ScalarAlwaysPresentAndSelectionValid) {
  ASSERT_NE(kernels_for(Backend::Scalar), nullptr);
  const DepthKernels& k = kernels();
  EXPECT_EQ(kernels_for(k.backend), &k);
  EXPECT_STRNE(to_string(k.backend), "");
}

TEST(DepthKernels, ScalarReference) {
  const std::vector<float> row{0.0f, 0.3f, 2.0f, 0.5f, 10.0f, 0.2f};
  EXPECT_EQ(scalar::min_occupied(row.data(), row.size(), 0.3f), 0.5f);
  EXPECT_EQ(scalar::min_occupied(row.data(), 2, 0.3f), std::numeric_limits<float>::infinity());
  EXPECT_EQ(scalar::min_occupied(row.data(), 0, 0.3f), std::numeric_limits<float>::infinity());
  EXPECT_TRUE(scalar::all_clear(row.data(), 3, 1.5f, 0.3f));
  EXPECT_FALSE(scalar::all_clear(row.data(), 4, 1.5f, 0.3f));
  EXPECT_FALSE(scalar::all_clear(row.data() + 2, 1, 2.0f, 0.3f));  // equal to threshold is not clear
  std::vector<float> acc(row.size(), 1.0f);
  scalar::merge_min(acc.data(), row.data(), row.size(), 0.3f);
  EXPECT_EQ(acc, (std::vector<float>{1.0f, 1.0f, 1.0f, 0.5f, 1.0f, 1.0f}));
}

TEST(DepthKernels, VariantsMatchScalarBitForBit) {
  std::mt19937_64 rng(1);
  const auto backends = available();
  std::uniform_real_distribution<float> fd(0.0f, 1.0f);
  std::uniform_real_distribution<float> th(0.5f, 9.0f);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t n = static_cast<std::size_t>(trial % 70);
    const std::size_t offset = static_cast<std::size_t>(trial % 7);
    const float free_depth = fd(rng);
    const float threshold = th(rng);
    const std::vector<float> buf = random_row(rng, n + offset, free_depth, threshold);
    const float* data = buf.data() + offset;
    std::vector<float> acc0 = random_row(rng, n, free_depth, threshold);
    for (float& v : acc0) {
      if (trial % 3 == 0) v = std::numeric_limits<float>::infinity();
    }

    const float ref_min = scalar::min_occupied(data, n, free_depth);
    const bool ref_clear = scalar::all_clear(data, n, threshold, free_depth);
    std::vector<float> ref_acc = acc0;
    scalar::merge_min(ref_acc.data(), data, n, free_depth);

    for (Backend b : backends) {
      const DepthKernels* k = kernels_for(b);
      EXPECT_EQ(k->min_occupied(data, n, free_depth), ref_min) << to_string(b) << " n=" << n;
      EXPECT_EQ(k->all_clear(data, n, threshold, free_depth), ref_clear) << to_string(b) << " n=" << n;
      std::vector<float> acc = acc0;
      k->merge_min(acc.data(), data, n, free_depth);
      EXPECT_EQ(acc, ref_acc) << to_string(b) << " n=" << n;
    }
  }
}

TEST(DepthKernels, SpanWrappers) {
  const std::vector<float> row{5.0f, 0.0f, 3.0f, 7.0f};
  EXPECT_EQ(min_occupied(row, 0.1f), 3.0f);
  EXPECT_TRUE(all_clear(row, 2.0f, 0.1f));
  EXPECT_FALSE(all_clear(row, 3.0f, 0.1f));
  std::vector<float> acc{4.0f, 4.0f, 4.0f, 4.0f};
  merge_min(acc, row, 0.1f);
  EXPECT_EQ(acc, (std::vector<float>{4.0f, 4.0f, 3.0f, 4.0f}));
}

}  // namespace
}  // namespace pyramidplan::simd
