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

// Loading steps shared by the command-line tool and the tests.

#ifndef CGPL_PIPELINE_HPP
#define CGPL_PIPELINE_HPP

#include <filesystem>
#include <vector>

#include "cgpl/error.hpp"
#include "cgpl/execution.hpp"
#include "cgpl/model.hpp"
#include "cgpl/scanner.hpp"

namespace cgpl {

struct LoadedProductLine {
  ProductLine product_line;  // bound to the layer definitions
  ScanReport report;
  std::vector<Diagnostic> warnings;  // scan and bind warnings
  bool has_layer_definitions = false;
};

// Reads the dialect, scans the layers and binds `layers.ldl`. Without that
// file the result is unbound, or an IoError when `require_ldl` is set.
LoadedProductLine load_product_line(
    const std::filesystem::path& root, bool require_ldl = true,
    ExecutionPolicy policy = ExecutionPolicy::kParallel);

// The single `*.pcl` file directly under root; a Usage error when there is
// none or more than one.
std::filesystem::path find_pcl(const std::filesystem::path& root);

ProductConfig load_pcl(const std::filesystem::path& path);

}  // namespace cgpl

#endif  // CGPL_PIPELINE_HPP
