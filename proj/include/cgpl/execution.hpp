// Copyright 2026 The cgpl Authors
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

#ifndef CGPL_EXECUTION_HPP
#define CGPL_EXECUTION_HPP

#include <cstddef>
#include <exception>
#include <vector>

namespace cgpl {

// kSerial is the reference path; kParallel distributes independent items
// over OpenMP threads. Both produce identical results.
enum class ExecutionPolicy { kSerial, kParallel };

// Runs fn(i) for i in [0, n). Exceptions are captured per item and the one
// with the lowest index is rethrown, so failures do not depend on scheduling.
template <typename Fn>
void for_each_index(std::size_t n, ExecutionPolicy policy, Fn&& fn) {
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long long>(n);
  if (policy == ExecutionPolicy::kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < count; ++i) {
      try {
        fn(static_cast<std::size_t>(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  } else {
    for (long long i = 0; i < count; ++i) {
      try {
        fn(static_cast<std::size_t>(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace cgpl

#endif  // CGPL_EXECUTION_HPP
