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

#include "cgpl/validator.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <cstdint>
#include <set>
#include <tuple>

namespace cgpl {

namespace {

// Tarjan's algorithm; components come out in reverse topological order.
std::vector<std::vector<std::size_t>> strongly_connected(
    std::size_t n, const std::vector<std::vector<std::size_t>>& adj) {
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> out;
  int counter = 0;

  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : adj[v]) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> comp;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      out.push_back(std::move(comp));
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (index[v] < 0) visit(v);
  }
  return out;
}

// Shortest cycle through `start` using only vertices of `members`.
std::vector<std::size_t> witness_cycle(
    std::size_t start, const std::set<std::size_t>& members,
    const std::vector<std::vector<std::size_t>>& adj) {
  std::map<std::size_t, std::size_t> parent;
  std::deque<std::size_t> queue;
  for (std::size_t w : adj[start]) {
    if (!members.count(w) || parent.count(w)) continue;
    parent[w] = start;
    queue.push_back(w);
  }
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    if (v == start) break;
    for (std::size_t w : adj[v]) {
      if (!members.count(w) || parent.count(w)) continue;
      parent[w] = v;
      queue.push_back(w);
    }
  }
  std::vector<std::size_t> cycle{start};
  for (std::size_t v = parent.at(start); v != start; v = parent.at(v)) {
    cycle.push_back(v);
  }
  cycle.push_back(start);
  std::reverse(cycle.begin(), cycle.end());
  return cycle;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string layer_fill(const std::string& layer) {
  static constexpr const char* kPalette[] = {
      "#a6cee3", "#b2df8a", "#fb9a99", "#fdbf6f",
      "#cab2d6", "#ffff99", "#8dd3c7", "#bebada",
  };
  std::uint32_t h = 2166136261u;
  for (unsigned char c : layer) {
    h ^= c;
    h *= 16777619u;
  }
  return kPalette[h % (sizeof(kPalette) / sizeof(kPalette[0]))];
}

}  // namespace

std::size_t RefinementGraph::add_node(const std::string& color,
                                      const Signature& signature) {
  VrNode node{color, signature};
  auto [it, inserted] = index_.emplace(node.id(), nodes_.size());
  if (inserted) nodes_.push_back(std::move(node));
  return it->second;
}

void RefinementGraph::add_edge(std::size_t from, std::size_t to,
                               RefinementOp op) {
  RefinementEdge e{from, to, op};
  if (std::find(edges_.begin(), edges_.end(), e) == edges_.end()) {
    edges_.push_back(e);
  }
}

std::optional<std::size_t> RefinementGraph::find_node(
    const std::string& color, const Signature& signature) const {
  auto it = index_.find(VrNode{color, signature}.id());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string_view conflict_kind_name(ConflictKind kind) {
  return kind == ConflictKind::kCycle ? "Cycle" : "MultipleRefiners";
}

RefinementGraph build_graph(const ProductLine& pl,
                            const std::vector<std::string>& selected) {
  RefinementGraph graph;
  graph.selected = selected;
  std::deque<std::string> queue;
  std::set<std::string> queued;
  for (const std::string& name : selected) {
    if (pl.find_layer(name) == nullptr) {
      throw Error(ErrorCode::kUnknownLayer,
                  "selected layer '" + name + "' does not exist");
    }
    if (queued.insert(name).second) queue.push_back(name);
  }

  while (!queue.empty()) {
    const std::string color = queue.front();
    queue.pop_front();
    graph.processed_colors.push_back(color);
    const Layer& layer = *pl.find_layer(color);
    for (const Refinement& r : layer.refinements) {
      std::size_t from = graph.add_node(color, r.refining);
      std::size_t to = graph.add_node(r.refined_layer, r.refined);
      graph.add_edge(from, to, r.op);
    }
    std::set<std::string> found;
    for (const VrNode& node : graph.nodes()) {
      if (!queued.count(node.color)) found.insert(node.color);
    }
    for (const std::string& c : found) {
      if (pl.find_layer(c) == nullptr) {
        throw Error(ErrorCode::kUnknownLayer,
                    "refinement targets unknown layer '" + c + "'");
      }
      queued.insert(c);
      queue.push_back(c);
    }
  }
  return graph;
}

ValidationResult validate(const RefinementGraph& graph) {
  ValidationResult result;
  const auto& nodes = graph.nodes();
  const std::size_t n = nodes.size();

  std::set<std::string> in_closure;
  auto add_color = [&](const std::string& c) {
    if (in_closure.insert(c).second) result.closure.push_back(c);
  };
  for (const auto& c : graph.selected) add_color(c);
  for (const auto& c : graph.processed_colors) add_color(c);
  for (const auto& node : nodes) add_color(node.color);

  std::vector<std::vector<std::size_t>> adj(n);
  std::vector<std::set<std::size_t>> refiners(n);
  for (const RefinementEdge& e : graph.edges()) {
    adj[e.from].push_back(e.to);
    refiners[e.to].insert(e.from);
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }

  std::vector<std::vector<std::size_t>> cyclic;
  for (auto& comp : strongly_connected(n, adj)) {
    const std::size_t v = comp.front();
    bool self_loop = std::binary_search(adj[v].begin(), adj[v].end(), v);
    if (comp.size() > 1 || self_loop) cyclic.push_back(std::move(comp));
  }
  std::sort(cyclic.begin(), cyclic.end());
  for (const auto& comp : cyclic) {
    std::set<std::size_t> members(comp.begin(), comp.end());
    result.conflicts.push_back(
        {ConflictKind::kCycle, witness_cycle(comp.front(), members, adj)});
  }

  for (std::size_t v = 0; v < n; ++v) {
    if (refiners[v].size() < 2) continue;
    Conflict c{ConflictKind::kMultipleRefiners, {v}};
    c.witnesses.insert(c.witnesses.end(), refiners[v].begin(),
                       refiners[v].end());
    std::sort(c.witnesses.begin() + 1, c.witnesses.end(),
              [&](std::size_t a, std::size_t b) {
                return nodes[a].id() < nodes[b].id();
              });
    result.conflicts.push_back(std::move(c));
  }

  // Layer-level cycles that do not show up as region-level cycles.
  std::vector<std::string> colors = result.closure;
  std::map<std::string, std::size_t> color_index;
  for (std::size_t i = 0; i < colors.size(); ++i) color_index[colors[i]] = i;
  std::vector<std::vector<std::size_t>> color_adj(colors.size());
  for (const RefinementEdge& e : graph.edges()) {
    std::size_t a = color_index[nodes[e.from].color];
    std::size_t b = color_index[nodes[e.to].color];
    if (a != b) color_adj[a].push_back(b);
  }
  for (auto& a : color_adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  auto color_components = strongly_connected(colors.size(), color_adj);
  std::sort(color_components.begin(), color_components.end());
  std::set<std::string> cycle_colors;
  for (const auto& comp : cyclic) {
    for (std::size_t v : comp) cycle_colors.insert(nodes[v].color);
  }
  for (const auto& comp : color_components) {
    if (comp.size() < 2) continue;
    std::vector<std::string> members;
    for (std::size_t i : comp) members.push_back(colors[i]);
    if (std::any_of(members.begin(), members.end(), [&](const std::string& c) {
          return cycle_colors.count(c) > 0;
        })) {
      continue;
    }
    std::sort(members.begin(), members.end());
    std::string names;
    for (const auto& m : members) names += (names.empty() ? "" : ", ") + m;
    result.warnings.push_back(
        {Severity::kWarning, {}, {},
         "layers {" + names + "} refine each other; allowed while their "
                              "regions do not form a cycle"});
  }
  return result;
}

std::string describe_conflict(const RefinementGraph& graph,
                              const Conflict& conflict) {
  const auto& nodes = graph.nodes();
  std::string out(conflict_kind_name(conflict.kind));
  if (conflict.kind == ConflictKind::kCycle) {
    out += ": ";
    for (std::size_t i = 0; i < conflict.witnesses.size(); ++i) {
      if (i > 0) out += " -> ";
      out += nodes[conflict.witnesses[i]].id();
    }
  } else {
    out += ": " + nodes[conflict.witnesses.front()].id() + " is refined by ";
    for (std::size_t i = 1; i < conflict.witnesses.size(); ++i) {
      if (i > 1) out += ", ";
      out += nodes[conflict.witnesses[i]].id();
    }
  }
  return out;
}

std::string export_dot(const RefinementGraph& graph,
                       const ValidationResult& result) {
  const auto& nodes = graph.nodes();
  std::string out =
      "// cgpl refinement graph: fill = layer, red = conflict, "
      "edges point from refining to refined region\n";
  if (nodes.empty()) return out + "digraph cgpl {}\n";

  std::set<std::size_t> hot_nodes;
  std::set<std::pair<std::size_t, std::size_t>> hot_edges;
  for (const Conflict& c : result.conflicts) {
    hot_nodes.insert(c.witnesses.begin(), c.witnesses.end());
    if (c.kind == ConflictKind::kCycle) {
      for (std::size_t i = 0; i + 1 < c.witnesses.size(); ++i) {
        hot_edges.insert({c.witnesses[i], c.witnesses[i + 1]});
      }
    } else {
      for (std::size_t i = 1; i < c.witnesses.size(); ++i) {
        hot_edges.insert({c.witnesses[i], c.witnesses.front()});
      }
    }
  }

  std::vector<std::size_t> order(nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return nodes[a].id() < nodes[b].id();
  });

  std::set<std::string> layers;
  for (const auto& node : nodes) layers.insert(node.color);
  for (const auto& layer : layers) {
    out += "// layer " + layer + ": " + layer_fill(layer) + "\n";
  }
  out += "digraph cgpl {\n";
  out += "  node [shape=box, style=filled, fontname=\"Helvetica\"];\n";
  for (std::size_t i : order) {
    const VrNode& node = nodes[i];
    out += "  \"" + dot_escape(node.id()) + "\" [label=\"" +
           dot_escape(node.signature.to_string()) + "\\n(" +
           dot_escape(node.color) + ")\", fillcolor=\"" +
           layer_fill(node.color) + "\"";
    if (hot_nodes.count(i)) out += ", color=\"red\", penwidth=2";
    out += "];\n";
  }

  std::vector<RefinementEdge> edges = graph.edges();
  std::sort(edges.begin(), edges.end(),
            [&](const RefinementEdge& a, const RefinementEdge& b) {
              auto key = [&](const RefinementEdge& e) {
                return std::make_tuple(nodes[e.from].id(), nodes[e.to].id(),
                                       static_cast<int>(e.op));
              };
              return key(a) < key(b);
            });
  for (const RefinementEdge& e : edges) {
    out += "  \"" + dot_escape(nodes[e.from].id()) + "\" -> \"" +
           dot_escape(nodes[e.to].id()) + "\" [label=\"" +
           std::string(refinement_op_keyword(e.op)) + "\"";
    if (hot_edges.count({e.from, e.to})) out += ", color=\"red\", penwidth=2";
    out += "];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace cgpl
