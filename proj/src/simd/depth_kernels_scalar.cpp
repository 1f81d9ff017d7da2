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

#include <limits>

#include "pyramidplan/simd/depth_kernels.hpp"

namespace pyramidplan::simd::scalar {

float min_occupied(const float* data, std::size_t n, float free_depth) {
  float m = std::numeric_limits<float>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const float v = data[i];
    if (v > free_depth && v < m) m = v;
  }
  return m;
}

bool all_clear(const float* data, std::size_t n, float threshold, float free_depth) {
  for (std::size_t i = 0; i < n; ++i) {
    const float v = data[i];
    if (v > free_depth && v <= threshold) return false;
  }
  return true;
}

void merge_min(float* acc, const float* data, std::size_t n, float free_depth) {
  for (std::size_t i = 0; i < n; ++i) {
    const float v = data[i];
    if (v > free_depth && v < acc[i]) acc[i] = v;
  }
}

}  // namespace pyramidplan::simd::scalar
