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

#include <immintrin.h>

#include <limits>

#include "pyramidplan/simd/depth_kernels.hpp"

namespace pyramidplan::simd::avx2 {

float min_occupied(const float* data, std::size_t n, float free_depth) {
  const __m256 inf = _mm256_set1_ps(std::numeric_limits<float>::infinity());
  const __m256 freev = _mm256_set1_ps(free_depth);
  __m256 acc0 = inf;
  __m256 acc1 = inf;
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    const __m256 v0 = _mm256_loadu_ps(data + i);
    const __m256 v1 = _mm256_loadu_ps(data + i + 8);
    const __m256 m0 = _mm256_cmp_ps(v0, freev, _CMP_GT_OQ);
    const __m256 m1 = _mm256_cmp_ps(v1, freev, _CMP_GT_OQ);
    acc0 = _mm256_min_ps(acc0, _mm256_blendv_ps(inf, v0, m0));
    acc1 = _mm256_min_ps(acc1, _mm256_blendv_ps(inf, v1, m1));
  }
  for (; i + 8 <= n; i += 8) {
    const __m256 v = _mm256_loadu_ps(data + i);
    acc0 = _mm256_min_ps(acc0, _mm256_blendv_ps(inf, v, _mm256_cmp_ps(v, freev, _CMP_GT_OQ)));
  }
  acc0 = _mm256_min_ps(acc0, acc1);
  __m128 lo = _mm_min_ps(_mm256_castps256_ps128(acc0), _mm256_extractf128_ps(acc0, 1));
  lo = _mm_min_ps(lo, _mm_movehl_ps(lo, lo));
  lo = _mm_min_ss(lo, _mm_shuffle_ps(lo, lo, 0x1));
  float m = _mm_cvtss_f32(lo);
  for (; i < n; ++i) {
    const float v = data[i];
    if (v > free_depth && v < m) m = v;
  }
  return m;
}

bool all_clear(const float* data, std::size_t n, float threshold, float free_depth) {
  const __m256 freev = _mm256_set1_ps(free_depth);
  const __m256 thr = _mm256_set1_ps(threshold);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 v = _mm256_loadu_ps(data + i);
    const __m256 blocking = _mm256_and_ps(_mm256_cmp_ps(v, freev, _CMP_GT_OQ), _mm256_cmp_ps(v, thr, _CMP_LE_OQ));
    if (_mm256_movemask_ps(blocking) != 0) return false;
  }
  for (; i < n; ++i) {
    const float v = data[i];
    if (v > free_depth && v <= threshold) return false;
  }
  return true;
}

void merge_min(float* acc, const float* data, std::size_t n, float free_depth) {
  const __m256 inf = _mm256_set1_ps(std::numeric_limits<float>::infinity());
  const __m256 freev = _mm256_set1_ps(free_depth);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 v = _mm256_loadu_ps(data + i);
    const __m256 occ = _mm256_blendv_ps(inf, v, _mm256_cmp_ps(v, freev, _CMP_GT_OQ));
    _mm256_storeu_ps(acc + i, _mm256_min_ps(_mm256_loadu_ps(acc + i), occ));
  }
  for (; i < n; ++i) {
    const float v = data[i];
    if (v > free_depth && v < acc[i]) acc[i] = v;
  }
}

}  // namespace pyramidplan::simd::avx2
