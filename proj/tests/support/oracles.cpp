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

#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace cgpl::testing {

namespace {

struct Line {
  std::size_t begin;
  std::size_t end;  // one past the terminator
  std::string trimmed;
};

std::vector<Line> lines_of(const std::string& text) {
  std::vector<Line> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::size_t end = nl == std::string::npos ? text.size() : nl + 1;
    std::string raw = text.substr(pos, end - pos);
    const auto b = raw.find_first_not_of(" \t\r\n");
    const auto e = raw.find_last_not_of(" \t\r\n");
    out.push_back({pos, end, b == std::string::npos ? "" : raw.substr(b, e - b + 1)});
    pos = end;
  }
  return out;
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.compare(0, prefix.size(), prefix) == 0;
}

// [begin, end) of the interior of the region called `name`.
std::pair<std::size_t, std::size_t> interior(const std::string& text,
                                             const std::string& name) {
  if (name.empty()) return {0, text.size()};
  const auto lines = lines_of(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& t = lines[i].trimmed;
    if (starts_with(t, "[DEFINE " + name + " ") || t == "[DEFINE " + name + "]") {
      int depth = 0;
      for (std::size_t j = i + 1; j < lines.size(); ++j) {
        if (starts_with(lines[j].trimmed, "[DEFINE ")) ++depth;
        if (lines[j].trimmed == "[ENDDEFINE]" && depth-- == 0) {
          return {lines[i].end, lines[j].begin};
        }
      }
    }
    std::string close;
    if (t == "[REM]BEGIN VR:" + name + "[ENDREM]") close = "[REM]END VR:" + name + "[ENDREM]";
    if (t == "// BEGIN VR:" + name) close = "// END VR:" + name;
    if (close.empty()) continue;
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      if (lines[j].trimmed == close) return {lines[i].end, lines[j].begin};
    }
  }
  throw std::logic_error("oracle: region " + name + " not found");
}

bool is_super(const std::string& trimmed) {
  return trimmed == "[REM][INCLUDE-SUPER][ENDREM]" || trimmed == "// INCLUDE-SUPER";
}

bool is_comment_marker(const std::string& trimmed) {
  return starts_with(trimmed, "[REM]BEGIN VR:") || starts_with(trimmed, "[REM]END VR:") ||
         starts_with(trimmed, "// BEGIN VR:") || starts_with(trimmed, "// END VR:");
}

class Splicer {
 public:
  explicit Splicer(const ComposerFixture& fx) : fx_(fx) {}

  std::string apply(const std::string& layer, const std::string& file) {
    std::string text = fx_.files.at(layer).at(file);
    std::vector<const FixtureRefinement*> targets;
    for (const auto& r : fx_.refinements) {
      if (r.target_layer == layer && r.target_file == file) targets.push_back(&r);
    }
    std::stable_sort(targets.begin(), targets.end(), [](auto* a, auto* b) {
      return a->target_depth > b->target_depth;
    });
    for (const FixtureRefinement* r : targets) {
      const std::string source = apply(r->layer, r->refining_file);
      const auto [cb, ce] = interior(source, r->refining_name);
      const std::string content = source.substr(cb, ce - cb);
      const auto [b, e] = interior(text, r->target_name);
      const std::string old = text.substr(b, e - b);
      std::string replacement;
      switch (r->op) {
        case RefinementOp::kReplace:
          for (const Line& l : lines_of(content)) {
            replacement += is_super(l.trimmed) ? old : content.substr(l.begin, l.end - l.begin);
          }
          break;
        case RefinementOp::kBefore:
          replacement = content + old;
          break;
        case RefinementOp::kAfter:
          replacement = old + content;
          break;
      }
      text = text.substr(0, b) + replacement + text.substr(e);
    }
    return text;
  }

 private:
  const ComposerFixture& fx_;
};

}  // namespace

std::map<std::string, std::string> splice_oracle(const ComposerFixture& fx) {
  std::set<std::pair<std::string, std::string>> fragments;
  for (const auto& r : fx.refinements) fragments.insert({r.layer, r.refining_file});
  Splicer splicer(fx);
  std::map<std::string, std::string> out;
  for (const auto& [layer, files] : fx.files) {
    for (const auto& [path, text] : files) {
      if (fragments.count({layer, path})) continue;
      const std::string composed = splicer.apply(layer, path);
      std::string stripped;
      for (const Line& l : lines_of(composed)) {
        if (!is_comment_marker(l.trimmed)) stripped += composed.substr(l.begin, l.end - l.begin);
      }
      out[path] = stripped;
    }
  }
  return out;
}

std::set<std::string> reachable_layers(
    const std::vector<std::string>& selected,
    const std::vector<std::pair<std::string, std::string>>& edges) {
  std::set<std::string> seen(selected.begin(), selected.end());
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& [from, to] : edges) {
      if (seen.count(from) && seen.insert(to).second) grew = true;
    }
  }
  return seen;
}

CycleCensus enumerate_cycles(const RefinementGraph& graph) {
  const std::size_t n = graph.nodes().size();
  std::vector<std::set<std::size_t>> succ(n);
  for (const auto& e : graph.edges()) succ[e.from].insert(e.to);

  CycleCensus census;
  // Cycles are listed once each, rooted at their smallest node.
  std::vector<std::size_t> path;
  std::vector<bool> used(n, false);
  std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t start, std::size_t v) {
    for (std::size_t w : succ[v]) {
      if (w == start) {
        census.cycles.push_back(path);
      } else if (w > start && !used[w]) {
        used[w] = true;
        path.push_back(w);
        walk(start, w);
        path.pop_back();
        used[w] = false;
      }
    }
  };
  for (std::size_t s = 0; s < n; ++s) {
    path = {s};
    used.assign(n, false);
    used[s] = true;
    walk(s, s);
  }

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& c : census.cycles) {
    for (std::size_t v : c) {
      census.on_cycle.insert(v);
      parent[find(v)] = find(c.front());
    }
  }
  std::set<std::size_t> roots;
  for (std::size_t v : census.on_cycle) roots.insert(find(v));
  census.groups = roots.size();
  return census;
}

std::map<std::size_t, std::set<std::size_t>> multiply_refined(
    const RefinementGraph& graph) {
  std::map<std::size_t, std::set<std::size_t>> sources;
  for (const auto& e : graph.edges()) sources[e.to].insert(e.from);
  std::map<std::size_t, std::set<std::size_t>> out;
  for (auto& [to, from] : sources) {
    if (from.size() >= 2) out[to] = from;
  }
  return out;
}

}  // namespace cgpl::testing
