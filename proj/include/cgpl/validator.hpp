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

// Refinement graph: one vertex per refined or refining region, colored by
// the layer that owns it, and one edge per refinement pointing from the
// refining region to the refined one. A selection is composable iff the
// graph is acyclic and no region has more than one refiner.

#ifndef CGPL_VALIDATOR_HPP
#define CGPL_VALIDATOR_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cgpl/error.hpp"
#include "cgpl/model.hpp"

namespace cgpl {

struct VrNode {
  std::string color;  // owning layer
  Signature signature;

  // `layer/signature`, unique within a graph.
  std::string id() const { return color + "/" + signature.to_string(); }
  bool operator==(const VrNode&) const = default;
};

struct RefinementEdge {
  std::size_t from = 0;  // refining node
  std::size_t to = 0;    // refined node
  RefinementOp op = RefinementOp::kReplace;
  bool operator==(const RefinementEdge&) const = default;
};

class RefinementGraph {
 public:
  // Adds the node if absent; returns its index.
  std::size_t add_node(const std::string& color, const Signature& signature);
  // Parallel edges with the same op are stored once.
  void add_edge(std::size_t from, std::size_t to, RefinementOp op);

  std::optional<std::size_t> find_node(const std::string& color,
                                       const Signature& signature) const;

  const std::vector<VrNode>& nodes() const { return nodes_; }
  const std::vector<RefinementEdge>& edges() const { return edges_; }

  std::vector<std::string> selected;
  std::vector<std::string> processed_colors;  // in processing order

 private:
  std::vector<VrNode> nodes_;
  std::vector<RefinementEdge> edges_;
  std::map<std::string, std::size_t> index_;
};

enum class ConflictKind { kCycle, kMultipleRefiners };
std::string_view conflict_kind_name(ConflictKind kind);

struct Conflict {
  ConflictKind kind = ConflictKind::kCycle;
  // Cycle: node indices of one cycle, first == last.
  // MultipleRefiners: the refined node followed by all its refiners.
  std::vector<std::size_t> witnesses;
};

struct ValidationResult {
  std::vector<std::string> closure;
  std::vector<Conflict> conflicts;
  std::vector<Diagnostic> warnings;

  bool ok() const { return conflicts.empty(); }
};

// Processes the selected layers' refinements, then those of every layer whose
// color shows up, until no unprocessed color remains. Newly found colors are
// queued in lexicographic order after each layer.
RefinementGraph build_graph(const ProductLine& pl,
                            const std::vector<std::string>& selected);

// Reports one Cycle per non-trivial strongly connected component and one
// MultipleRefiners per region with two or more distinct refiners, whatever
// the refinement ops. Cycles between layers whose regions do not form a cycle
// only produce a warning.
ValidationResult validate(const RefinementGraph& graph);

// Graphviz digraph; deterministic for a given graph and result.
std::string export_dot(const RefinementGraph& graph,
                       const ValidationResult& result);

std::string describe_conflict(const RefinementGraph& graph,
                              const Conflict& conflict);

}  // namespace cgpl

#endif  // CGPL_VALIDATOR_HPP
