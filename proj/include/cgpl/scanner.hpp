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

#ifndef CGPL_SCANNER_HPP
#define CGPL_SCANNER_HPP

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cgpl/dialect.hpp"
#include "cgpl/error.hpp"
#include "cgpl/execution.hpp"
#include "cgpl/model.hpp"

namespace cgpl {

// Name of the sidecar written into composed variants; directories holding
// one are skipped when scanning.
inline constexpr std::string_view kProvenanceFile = "cgpl-provenance.json";

struct ScanReport {
  std::size_t layers_loaded = 0;
  std::array<std::size_t, 3> artifacts{};  // indexed by ArtifactKind
  std::array<std::size_t, 3> regions{};    // indexed by VrKind
  std::vector<Diagnostic> warnings;
};

struct ScanResult {
  ProductLine product_line;
  ScanReport report;
};

// Loads every immediate subdirectory of root as a layer. `refines` and
// `refinements` stay empty until binding.
ScanResult scan_product_line(
    const std::filesystem::path& root, const DialectConfig& dialect,
    ExecutionPolicy policy = ExecutionPolicy::kParallel);

// Builds the region tree of one artifact. Marker lines delimit regions and
// are not part of any body; all other bytes are kept verbatim.
VariabilityRegion parse_artifact(std::string_view text,
                                 const MarkerMatcher& matcher,
                                 ArtifactKind kind = ArtifactKind::kTemplate,
                                 std::string root_name = {},
                                 std::string_view path = {},
                                 std::vector<Diagnostic>* warnings = nullptr);

VariabilityRegion parse_artifact(std::string_view text,
                                 const DialectConfig& dialect,
                                 ArtifactKind kind = ArtifactKind::kTemplate);

// Inverse of parse_artifact. Regions without recorded marker lines get
// synthesized ones; literal text preceding such a marker must end in a line
// break for the result to re-parse to the same tree.
std::string serialize_artifact(const VariabilityRegion& root,
                               const MarkerMatcher& matcher,
                               ArtifactKind kind = ArtifactKind::kTemplate);

std::string serialize_artifact(const VariabilityRegion& root,
                               const DialectConfig& dialect,
                               ArtifactKind kind = ArtifactKind::kTemplate);

// Splits text into lines, each keeping its terminator.
std::vector<std::string_view> split_lines(std::string_view text);

bool is_valid_utf8(std::string_view text);

std::string read_file(const std::filesystem::path& path);

}  // namespace cgpl

#endif  // CGPL_SCANNER_HPP
