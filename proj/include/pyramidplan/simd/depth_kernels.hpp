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

#pragma once

#include <algorithm>
#include <cstddef>
#include <span>

// Row-span reductions over depth buffers. These are the inner loops of
// pyramid inflation (rectangle growth, expanded-depth minimum and the
// full-image band scans). Each kernel has a scalar reference and vector
// variants; the variant is picked once at startup from the CPU features,
// and PYRAMIDPLAN_SIMD=scalar|avx2|neon overrides the choice.

namespace pyramidplan::simd {

enum class Backend { Scalar, Avx2, Neon };

const char* to_string(Backend b);

struct DepthKernels {
  Backend backend;
  //! Minimum of the values strictly greater than free_depth; +inf if none.
  float (*min_occupied)(const float* data, std::size_t n, float free_depth);
  //! True iff every value v satisfies v <= free_depth or v > threshold.
  bool (*all_clear)(const float* data, std::size_t n, float threshold, float free_depth);
  //! acc[i] = min(acc[i], data[i]) for every data[i] > free_depth.
  void (*merge_min)(float* acc, const float* data, std::size_t n, float free_depth);
};

//! Kernels selected for this process.
const DepthKernels& kernels();

//! Kernels for a specific backend, or nullptr when the backend was not
//! compiled in or the CPU lacks the instructions.
const DepthKernels* kernels_for(Backend b);

inline float min_occupied(std::span<const float> values, float free_depth) {
  return kernels().min_occupied(values.data(), values.size(), free_depth);
}

inline bool all_clear(std::span<const float> values, float threshold, float free_depth) {
  return kernels().all_clear(values.data(), values.size(), threshold, free_depth);
}

inline void merge_min(std::span<float> acc, std::span<const float> values, float free_depth) {
  kernels().merge_min(acc.data(), values.data(), std::min(acc.size(), values.size()), free_depth);
}

namespace scalar {
float min_occupied(const float* data, std::size_t n, float free_depth);
bool all_clear(const float* data, std::size_t n, float threshold, float free_depth);
void merge_min(float* acc, const float* data, std::size_t n, float free_depth);
}  // namespace scalar

#if defined(PYRAMIDPLAN_HAVE_AVX2)
namespace avx2 {
float min_occupied(const float* data, std::size_t n, float free_depth);
bool all_clear(const float* data, std::size_t n, float threshold, float free_depth);
void merge_min(float* acc, const float* data, std::size_t n, float free_depth);
}  // namespace avx2
#endif

#if defined(PYRAMIDPLAN_HAVE_NEON)
namespace neon {
float min_occupied(const float* data, std::size_t n, float free_depth);
bool all_clear(const float* data, std::size_t n, float threshold, float free_depth);
void merge_min(float* acc, const float* data, std::size_t n, float free_depth);
}  // namespace neon
#endif

}  // namespace pyramidplan::simd
