// Copyright 2026 The stricteq Authors
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

#ifndef STRICTEQ_PARALLEL_HPP_
#define STRICTEQ_PARALLEL_HPP_

#include <cstddef>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace stricteq {

inline bool openmp_enabled() {
#if defined(_OPENMP)
  return true;
#else
  return false;
#endif
}

/// Runs fn(i) for i in [0, n). With parallel=true and OpenMP available
/// the iterations run concurrently; fn must only write to index-owned
/// slots so results never depend on scheduling.
template <typename Fn>
void for_each_index(std::size_t n, bool parallel, Fn&& fn) {
#if defined(_OPENMP)
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      fn(static_cast<std::size_t>(i));
    }
    return;
  }
#else
  (void)parallel;
#endif
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace stricteq

#endif  // STRICTEQ_PARALLEL_HPP_
