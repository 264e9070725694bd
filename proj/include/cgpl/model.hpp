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

// Domain types of a code-generator product line: layers of artifacts whose
// variability regions (VRs) are refined by regions of other layers.

#ifndef CGPL_MODEL_HPP
#define CGPL_MODEL_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cgpl/dialect.hpp"
#include "cgpl/error.hpp"

namespace cgpl {

bool is_identifier(std::string_view s);

// One step of a VR path. The qualifier names the meta-model type of a block
// and disambiguates same-named siblings; rendered as `Name#Type`.
struct VrName {
  std::string name;
  std::optional<std::string> qualifier;

  bool operator==(const VrName&) const = default;
  auto operator<=>(const VrName&) const = default;
};

// Address of a VR: `dir.dir.Stem[:Vr.Vr#Type]`. An empty vr_path addresses
// the whole artifact.
struct Signature {
  std::vector<std::string> artifact_path;
  std::vector<VrName> vr_path;

  bool whole_artifact() const { return vr_path.empty(); }
  std::string to_string() const;

  // Parses the canonical rendering. Throws SyntaxError.
  static Signature parse(std::string_view text);

  bool operator==(const Signature&) const = default;
  auto operator<=>(const Signature&) const = default;
};

// Signature of the region reached by `chain` inside the artifact stored at
// `relative_path` (a `/`-separated path; the extension is dropped).
Signature signature_of(std::string_view relative_path,
                       const std::vector<VrName>& chain);

enum class VrKind { kContentBlock, kEmptyBlock, kWholeArtifact };
std::string_view vr_kind_name(VrKind kind);

// How a region is delimited in its artifact text.
enum class MarkerStyle { kNone, kBlock, kComment };

struct ChildRef {
  std::size_t index = 0;
  bool operator==(const ChildRef&) const = default;
};

// Literal text or a reference into VariabilityRegion::children.
using BodySegment = std::variant<std::string, ChildRef>;

struct VariabilityRegion {
  std::string name;
  std::optional<std::string> type_qualifier;
  VrKind kind = VrKind::kWholeArtifact;
  MarkerStyle markers = MarkerStyle::kNone;
  std::vector<BodySegment> body;
  std::vector<VariabilityRegion> children;

  // Marker lines exactly as read, terminator included. Empty for regions
  // built in memory; serialization then synthesizes them from the dialect.
  std::string open_marker;
  std::string close_marker;
  // Interior whitespace of an EmptyBlock, kept for byte-exact round trips.
  std::string padding;

  SourceSpan span;

  std::size_t count_regions() const;
};

// Same tree shape, names, qualifiers, kinds, marker styles and literal text.
// Ignores spans and raw marker bytes.
bool structurally_equal(const VariabilityRegion& a,
                        const VariabilityRegion& b);

// Checks the per-region invariants; throws DuplicateVR or MarkerMismatch.
void check_region_invariants(const VariabilityRegion& vr,
                             std::string_view path = {});

struct Artifact {
  std::string relative_path;  // `/`-separated, relative to the layer root
  ArtifactKind kind = ArtifactKind::kOpaque;
  VariabilityRegion root;

  // Path segments with the extension removed from the last one.
  std::vector<std::string> signature_path() const;
};

enum class RefinementOp { kReplace, kBefore, kAfter };
std::string_view refinement_op_keyword(RefinementOp op);  // replaces/before/after

struct Refinement {
  RefinementOp op = RefinementOp::kReplace;
  Signature refining;
  Signature refined;
  // Layer the refined signature resolved in; set by binding.
  std::string refined_layer;
  SourceSpan span;

  bool operator==(const Refinement& o) const {
    return op == o.op && refining == o.refining && refined == o.refined &&
           refined_layer == o.refined_layer;
  }
};

struct Layer {
  std::string name;
  std::vector<Artifact> artifacts;  // sorted by relative_path
  std::vector<std::string> refines;
  std::vector<Refinement> refinements;

  const Artifact* find_artifact(std::string_view relative_path) const;
};

struct ProductConfig {
  static constexpr std::string_view kDefaultOutput = "gen";

  std::string generator_name;
  std::optional<std::string> output_dir;
  std::vector<std::string> selected_layers;

  std::string output_or_default() const {
    return output_dir.value_or(std::string(kDefaultOutput));
  }
  bool operator==(const ProductConfig&) const = default;
};

struct ProductLine {
  std::filesystem::path root_dir;
  std::map<std::string, Layer> layers;
  DialectConfig dialect;

  const Layer* find_layer(std::string_view name) const;
};

struct VrLocation {
  const Layer* layer = nullptr;
  const Artifact* artifact = nullptr;
  const VariabilityRegion* region = nullptr;
};

// Finds the region addressed by `sig` inside layer `within`. Throws
// UnknownLayer, UnknownArtifact, UnknownVR or AmbiguousVR.
VrLocation locate(const ProductLine& pl, const Signature& sig,
                  std::string_view within);
VrLocation locate(const Layer& layer, const Signature& sig);

const VariabilityRegion& resolve(const ProductLine& pl, const Signature& sig,
                                 std::string_view within);

// Rewrites `sig` so that a step carries its type qualifier exactly when a
// same-named sibling exists. Two spellings of one region canonicalize to the
// same signature.
Signature canonical_signature(const Layer& layer, const Signature& sig);

}  // namespace cgpl

#endif  // CGPL_MODEL_HPP
