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

// Static composition of a validated layer closure into a generator variant.
//
// A region's composed form is built bottom-up: its children are composed
// first, then each refinement targeting it is applied, base-most layer
// first. The refining region is itself composed before use, so it arrives
// as a complete unit. Semantics per operation:
//
//   replaces  The body is substituted. Include-super lines in the new body
//             expand to the body it replaces. Attached before/after content
//             is kept.
//   before    Content goes right after the region's opening marker.
//   after     Content goes right before the region's closing marker.
//
// Comment-delimited region markers are stripped from the output unless
// markers are kept; block markers are template syntax and always stay.

#ifndef CGPL_COMPOSER_HPP
#define CGPL_COMPOSER_HPP

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cgpl/error.hpp"
#include "cgpl/execution.hpp"
#include "cgpl/model.hpp"
#include "cgpl/validator.hpp"

namespace cgpl {

struct ArtifactRef {
  std::string layer;
  std::string relative_path;
  auto operator<=>(const ArtifactRef&) const = default;
};

struct PlannedRefinement {
  std::string layer;  // layer holding the refining region
  Refinement refinement;
};

struct CompositionPlan {
  std::vector<std::string> closure;
  // Keyed by `layer/signature` of the refined region; base-most first.
  std::map<std::string, std::vector<PlannedRefinement>> per_target;
  std::vector<ArtifactRef> emit_set;
  std::vector<ArtifactRef> fragment_set;
};

struct CompositionOptions {
  bool keep_markers = false;
  ExecutionPolicy policy = ExecutionPolicy::kParallel;
};

struct ProvenanceStep {
  std::string layer;  // layer of the refining region
  Signature refining;
  Signature refined;
  RefinementOp op = RefinementOp::kReplace;
  bool operator==(const ProvenanceStep&) const = default;
};

struct ComposedArtifact {
  std::string relative_path;
  std::string source_layer;
  std::string content;
  std::vector<ProvenanceStep> provenance;
};

// Composed text of one region, split around its replaceable body.
struct ComposedRegion {
  std::string before;
  std::string body;
  std::string after;
  bool empty_block = false;  // body is still the padding of an EmptyBlock

  std::string text() const { return before + body + after; }
};

struct CompositionResult {
  std::vector<ComposedArtifact> artifacts;  // sorted by relative_path
  std::vector<Diagnostic> warnings;
};

// Requires result.ok(). Throws PathCollision when two emitted artifacts of
// different layers share a relative path.
CompositionPlan plan(const ProductLine& pl, const ValidationResult& result);

using RefinementChain =
    std::vector<std::pair<RefinementOp, const VariabilityRegion*>>;

// Applies `chain` (base-most first) to `target`. Regions are rendered as-is,
// without consulting any other refinement. Throws DanglingSuper.
ComposedRegion compose_vr(const VariabilityRegion& target,
                          const RefinementChain& chain,
                          const MarkerMatcher& matcher,
                          ArtifactKind kind = ArtifactKind::kTemplate,
                          const CompositionOptions& options = {},
                          std::vector<Diagnostic>* warnings = nullptr);

CompositionResult compose(const ProductLine& pl, const ProductConfig& config,
                          const ValidationResult& result,
                          const CompositionOptions& options = {});

struct WriteSummary {
  std::filesystem::path output_dir;
  std::vector<std::string> files;  // relative paths, provenance sidecar last
};

// Replaces output_dir with the variant: files go to a sibling temporary
// directory that is then swapped in. An existing non-empty output_dir is only
// replaced if it holds a provenance sidecar from an earlier run.
WriteSummary write_variant(const std::vector<ComposedArtifact>& artifacts,
                           const std::filesystem::path& output_dir);

// One record per artifact: path, contributing layers, ordered steps.
std::string provenance_json(const std::vector<ComposedArtifact>& artifacts);

}  // namespace cgpl

#endif  // CGPL_COMPOSER_HPP
