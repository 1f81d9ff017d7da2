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

#include <arm_neon.h>

#include <limits>

#include "pyramidplan/simd/depth_kernels.hpp"

namespace pyramidplan::simd::neon {

float min_occupied(const float* data, std::size_t n, float free_depth) {
  const float32x4_t inf = vdupq_n_f32(std::numeric_limits<float>::infinity());
  const float32x4_t freev = vdupq_n_f32(free_depth);
  float32x4_t acc = inf;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float32x4_t v = vld1q_f32(data + i);
    acc = vminq_f32(acc, vbslq_f32(vcgtq_f32(v, freev), v, inf));
  }
  float m = vminvq_f32(acc);
  for (; i < n; ++i) {
    const float v = data[i];
    if (v > free_depth && v < m) m = v;
  }
  return m;
}

bool all_clear(const float* data, std::size_t n, float threshold, float free_depth) {
  const float32x4_t freev = vdupq_n_f32(free_depth);
  const float32x4_t thr = vdupq_n_f32(threshold);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float32x4_t v = vld1q_f32(data + i);
    const uint32x4_t blocking = vandq_u32(vcgtq_f32(v, freev), vcleq_f32(v, thr));
    if (vmaxvq_u32(blocking) != 0) return false;
  }
  for (; i < n; ++i) {
    const float v = data[i];
    if (v > free_depth && v <= threshold) return false;
  }
  return true;
}

void merge_min(float* acc, const float* data, std::size_t n, float free_depth) {
  const float32x4_t inf = vdupq_n_f32(std::numeric_limits<float>::infinity());
  const float32x4_t freev = vdupq_n_f32(free_depth);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float32x4_t v = vld1q_f32(data + i);
    const float32x4_t occ = vbslq_f32(vcgtq_f32(v, freev), v, inf);
    vst1q_f32(acc + i, vminq_f32(vld1q_f32(acc + i), occ));
  }
  for (; i < n; ++i) {
    const float v = data[i];
    if (v > free_depth && v < acc[i]) acc[i] = v;
  }
}

}  // namespace pyramidplan::simd::neon
