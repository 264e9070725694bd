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

#include "cgpl/pipeline.hpp"

#include <algorithm>

#include "cgpl/dialect.hpp"
#include "cgpl/ldl.hpp"
#include "cgpl/pcl.hpp"

namespace cgpl {

namespace fs = std::filesystem;

LoadedProductLine load_product_line(const fs::path& root, bool require_ldl,
                                    ExecutionPolicy policy) {
  LoadedProductLine out;
  const DialectConfig dialect = load_dialect(root);
  ScanResult scan = scan_product_line(root, dialect, policy);
  out.report = std::move(scan.report);
  out.warnings = out.report.warnings;

  const fs::path ldl_path = root / std::string(kLayerDefinitionFile);
  std::error_code ec;
  if (!fs::is_regular_file(ldl_path, ec)) {
    if (require_ldl) {
      throw Error(ErrorCode::kIoError, "layer definition file not found",
                  ldl_path.string());
    }
    out.product_line = std::move(scan.product_line);
    return out;
  }
  const std::string text = read_file(ldl_path);
  const LayerDefinitionModel model = parse_ldl(text, ldl_path.string());
  out.product_line =
      cgpl::bind(scan.product_line, model, &out.warnings, ldl_path.string());
  out.has_layer_definitions = true;
  return out;
}

fs::path find_pcl(const fs::path& root) {
  std::vector<fs::path> found;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(root, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pcl") {
      found.push_back(entry.path());
    }
  }
  if (ec) throw Error(ErrorCode::kIoError, ec.message(), root.string());
  std::sort(found.begin(), found.end());
  if (found.size() == 1) return found.front();
  if (found.empty()) {
    throw Error(ErrorCode::kUsage,
                "no *.pcl file in the product-line root; pass --pcl",
                root.string());
  }
  std::string names;
  for (const auto& p : found) {
    names += (names.empty() ? "" : ", ") + p.filename().string();
  }
  throw Error(ErrorCode::kUsage,
              "several *.pcl files (" + names + "); pass --pcl", root.string());
}

ProductConfig load_pcl(const fs::path& path) {
  return parse_pcl(read_file(path), path.string());
}

}  // namespace cgpl
