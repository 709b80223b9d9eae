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

// Dense double-precision kernels used by the equilibrium solvers.
//
// Every kernel has a portable scalar reference. Vector variants are compiled
// with per-function target attributes (no global -mavx2) and selected at
// runtime from CPU feature bits. The scalar path is always available and is
// the oracle for the equivalence tests.
//
// SOFTFUSION_SIMD=scalar|avx2|auto in the environment overrides the choice.

#ifndef SOFTFUSION_KERNELS_HPP_
#define SOFTFUSION_KERNELS_HPP_

#include <cstddef>
#include <string_view>

namespace softfusion::kernels {

struct KernelTable {
  std::string_view name;

  // sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);

  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);

  // out[r] = sum_c a[r * stride + c] * x[c], for r < rows, c < cols.
  void (*gemv)(const double* a, std::size_t rows, std::size_t cols, std::size_t stride,
               const double* x, double* out);

  // out[c] = sum_r x[r] * a[r * stride + c]. Accumulates row by row, so the
  // summation order over r is fixed.
  void (*gemv_t)(const double* a, std::size_t rows, std::size_t cols, std::size_t stride,
                 const double* x, double* out);

  // Index of the smallest element (first on ties); n > 0.
  std::size_t (*argmin)(const double* x, std::size_t n);
};

const KernelTable& scalar_kernels();

// Null when the binary or the CPU lacks AVX2 + FMA.
const KernelTable* avx2_kernels();

// The table selected for this process (read once).
const KernelTable& active_kernels();

}  // namespace softfusion::kernels

#endif  // SOFTFUSION_KERNELS_HPP_
