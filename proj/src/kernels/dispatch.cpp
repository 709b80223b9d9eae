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

#include <cstdlib>
#include <string_view>

#include "softfusion/kernels.hpp"

namespace softfusion::kernels {

const KernelTable& active_kernels() {
  static const KernelTable& table = []() -> const KernelTable& {
    const char* env = std::getenv("SOFTFUSION_SIMD");
    const std::string_view choice = env ? env : "auto";
    if (choice == "scalar") return scalar_kernels();
    if (const KernelTable* v = avx2_kernels()) return *v;
    return scalar_kernels();
  }();
  return table;
}

}  // namespace softfusion::kernels
