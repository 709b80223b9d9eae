// Copyright 2026 The softfusion Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstddef>

#include "softfusion/kernels.hpp"

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define SOFTFUSION_HAVE_AVX2_TARGET 1
#include <immintrin.h>
#endif

namespace softfusion::kernels {

#ifdef SOFTFUSION_HAVE_AVX2_TARGET
namespace {

#define SF_AVX2 __attribute__((target("avx2,fma")))

SF_AVX2 double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

SF_AVX2 double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

SF_AVX2 void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(a, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

SF_AVX2 void gemv_avx2(const double* a, std::size_t rows, std::size_t cols, std::size_t stride,
                       const double* x, double* out) {
  for (std::size_t r = 0; r < rows; ++r) out[r] = dot_avx2(a + r * stride, x, cols);
}

SF_AVX2 void gemv_t_avx2(const double* a, std::size_t rows, std::size_t cols, std::size_t stride,
                         const double* x, double* out) {
  for (std::size_t c = 0; c < cols; ++c) out[c] = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    if (x[r] != 0.0) axpy_avx2(x[r], a + r * stride, out, cols);
  }
}

SF_AVX2 std::size_t argmin_avx2(const double* x, std::size_t n) {
  if (n < 8) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (x[i] < x[best]) best = i;
    }
    return best;
  }
  // Lane-wise minimum first, then the first index that attains it.
  __m256d m = _mm256_loadu_pd(x);
  std::size_t i = 4;
  for (; i + 4 <= n; i += 4) m = _mm256_min_pd(m, _mm256_loadu_pd(x + i));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double v = lanes[0];
  for (int k = 1; k < 4; ++k) v = lanes[k] < v ? lanes[k] : v;
  for (; i < n; ++i) v = x[i] < v ? x[i] : v;
  for (std::size_t k = 0; k < n; ++k) {
    if (x[k] == v) return k;
  }
  // NaN-only input: fall back to the scalar rule.
  return 0;
}

#undef SF_AVX2

}  // namespace

const KernelTable* avx2_kernels() {
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  if (!supported) return nullptr;
  static const KernelTable table{"avx2", dot_avx2, axpy_avx2, gemv_avx2, gemv_t_avx2,
                                 argmin_avx2};
  return &table;
}

#else

const KernelTable* avx2_kernels() { return nullptr; }

#endif

}  // namespace softfusion::kernels
