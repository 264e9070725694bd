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

// Layer definition language:
//
//   model  := entry*
//   entry  := "layer" ID "refines" ID ("," ID)* "{" clause* "}"
//   clause := sig ("replaces" | "before" | "after") sig ";"
//   sig    := ID ("." ID)* (":" qid ("." qid)*)?
//   qid    := ID ("#" ID)?

#ifndef CGPL_LDL_HPP
#define CGPL_LDL_HPP

#include <string>
#include <string_view>
#include <vector>

#include "cgpl/error.hpp"
#include "cgpl/model.hpp"

namespace cgpl {

inline constexpr std::string_view kLayerDefinitionFile = "layers.ldl";

struct LayerEntry {
  std::string layer;
  std::vector<std::string> refines;
  std::vector<Refinement> clauses;
  SourceSpan span;

  bool operator==(const LayerEntry& o) const {
    return layer == o.layer && refines == o.refines && clauses == o.clauses;
  }
};

struct LayerDefinitionModel {
  std::vector<LayerEntry> entries;
  bool operator==(const LayerDefinitionModel&) const = default;
};

LayerDefinitionModel parse_ldl(std::string_view text,
                               std::string_view path = {});

// Canonical pretty-printing; parse_ldl(render_ldl(m)) == m.
std::string render_ldl(const LayerDefinitionModel& model);

// Attaches `refines` and `refinements` to the named layers and resolves every
// clause. A refined signature found in several refined layers binds to the
// first in declaration order and records a warning.
ProductLine bind(const ProductLine& pl, const LayerDefinitionModel& model,
                 std::vector<Diagnostic>* warnings = nullptr,
                 std::string_view ldl_path = {});

}  // namespace cgpl

#endif  // CGPL_LDL_HPP
