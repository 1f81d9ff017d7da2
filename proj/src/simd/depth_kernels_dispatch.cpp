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

#include <cstdlib>
#include <string_view>

#include "pyramidplan/simd/depth_kernels.hpp"

namespace pyramidplan::simd {

namespace {

constexpr DepthKernels kScalar{Backend::Scalar, &scalar::min_occupied, &scalar::all_clear, &scalar::merge_min};
#if defined(PYRAMIDPLAN_HAVE_AVX2)
constexpr DepthKernels kAvx2{Backend::Avx2, &avx2::min_occupied, &avx2::all_clear, &avx2::merge_min};
#endif
#if defined(PYRAMIDPLAN_HAVE_NEON)
constexpr DepthKernels kNeon{Backend::Neon, &neon::min_occupied, &neon::all_clear, &neon::merge_min};
#endif

const DepthKernels& select() {
  const char* forced = std::getenv("PYRAMIDPLAN_SIMD");
  if (forced != nullptr) {
    const std::string_view name(forced);
    for (Backend b : {Backend::Scalar, Backend::Avx2, Backend::Neon}) {
      if (name == to_string(b)) {
        if (const DepthKernels* k = kernels_for(b)) return *k;
      }
    }
  }
  if (const DepthKernels* k = kernels_for(Backend::Avx2)) return *k;
  if (const DepthKernels* k = kernels_for(Backend::Neon)) return *k;
  return kScalar;
}

}  // namespace

const char* to_string(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return "scalar";
    case Backend::Avx2:
      return "avx2";
    case Backend::Neon:
      return "neon";
  }
  return "unknown";
}

const DepthKernels* kernels_for(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return &kScalar;
    case Backend::Avx2:
#if defined(PYRAMIDPLAN_HAVE_AVX2)
      __builtin_cpu_init();
      if (__builtin_cpu_supports("avx2")) return &kAvx2;
#endif
      return nullptr;
    case Backend::Neon:
#if defined(PYRAMIDPLAN_HAVE_NEON)
      return &kNeon;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

const DepthKernels& kernels() {
  static const DepthKernels& active = select();
  return active;
}

}  // namespace pyramidplan::simd
