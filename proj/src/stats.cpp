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

#include "cgpl/stats.hpp"

#include <algorithm>
#include <set>

#include "cgpl/scanner.hpp"
#include "json.hpp"

namespace cgpl {

namespace {

struct Counter {
  const std::set<std::string>& refined;
  const std::string& layer;
  StatsRow& row;

  void visit(const VariabilityRegion& vr, const Signature& sig, ArtifactKind kind) {
    for (const VariabilityRegion& child : vr.children) {
      Signature child_sig = sig;
      VrName step{child.name, std::nullopt};
      const auto same = std::count_if(
          vr.children.begin(), vr.children.end(),
          [&](const VariabilityRegion& c) { return c.name == child.name; });
      if (same > 1) step.qualifier = child.type_qualifier;
      child_sig.vr_path.push_back(std::move(step));

      const bool hit = refined.count(layer + "/" + child_sig.to_string()) > 0;
      if (kind == ArtifactKind::kTemplate && child.markers == MarkerStyle::kBlock) {
        ++row.define_count;
        if (hit) ++row.refined_define_count;
      } else if (kind == ArtifactKind::kHelper) {
        ++row.helper_count;
        if (hit) ++row.refined_helper_count;
      }
      visit(child, child_sig, kind);
    }
  }
};

void add(StatsRow& total, const StatsRow& row) {
  total.tloc += row.tloc;
  total.define_count += row.define_count;
  total.refined_define_count += row.refined_define_count;
  total.hloc += row.hloc;
  total.helper_count += row.helper_count;
  total.refined_helper_count += row.refined_helper_count;
}

std::array<std::size_t, 6> values(const StatsRow& r) {
  return {r.tloc, r.define_count, r.refined_define_count,
          r.hloc, r.helper_count, r.refined_helper_count};
}

nlohmann::ordered_json row_json(const StatsRow& r) {
  nlohmann::ordered_json j;
  j["layer"] = r.layer;
  j["tloc"] = r.tloc;
  j["define_count"] = r.define_count;
  j["refined_define_count"] = r.refined_define_count;
  j["hloc"] = r.hloc;
  j["helper_count"] = r.helper_count;
  j["refined_helper_count"] = r.refined_helper_count;
  return j;
}

}  // namespace

std::size_t count_nonblank_lines(std::string_view text) {
  std::size_t n = 0;
  for (std::string_view line : split_lines(text)) {
    if (!trim_blanks(line).empty()) ++n;
  }
  return n;
}

StatsReport compute_stats(const ProductLine& pl) {
  std::set<std::string> refined;
  for (const auto& [name, layer] : pl.layers) {
    for (const Refinement& r : layer.refinements) {
      refined.insert(r.refined_layer + "/" + r.refined.to_string());
    }
  }

  StatsReport report;
  report.totals.layer = "total";
  for (const auto& [name, layer] : pl.layers) {
    StatsRow row;
    row.layer = name;
    Counter counter{refined, name, row};
    for (const Artifact& a : layer.artifacts) {
      if (a.kind == ArtifactKind::kOpaque) continue;
      // Serialization reproduces the file bytes, marker lines included.
      const std::size_t lines =
          count_nonblank_lines(serialize_artifact(a.root, pl.dialect, a.kind));
      (a.kind == ArtifactKind::kTemplate ? row.tloc : row.hloc) += lines;
      counter.visit(a.root, signature_of(a.relative_path, {}), a.kind);
    }
    add(report.totals, row);
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string render_stats_table(const StatsReport& report) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{"Layer"};
  header.insert(header.end(), kStatsColumns.begin(), kStatsColumns.end());
  cells.push_back(header);
  auto push = [&](const StatsRow& r) {
    std::vector<std::string> line{r.layer};
    for (std::size_t v : values(r)) line.push_back(std::to_string(v));
    cells.push_back(std::move(line));
  };
  for (const StatsRow& r : report.rows) push(r);
  push(report.totals);

  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      width[c] = std::max(width[c], line[c].size());
    }
  }
  std::string out;
  auto emit = [&](const std::vector<std::string>& line) {
    std::string text;
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c > 0) text += "  ";
      const std::string pad(width[c] - line[c].size(), ' ');
      text += c == 0 ? line[c] + pad : pad + line[c];
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out += text + "\n";
  };
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i + 1 == cells.size()) {
      std::size_t total = 0;
      for (std::size_t w : width) total += w;
      out += std::string(total + 2 * (width.size() - 1), '-') + "\n";
    }
    emit(cells[i]);
  }
  return out;
}

std::string render_stats_json(const StatsReport& report) {
  nlohmann::ordered_json j;
  j["columns"] = kStatsColumns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const StatsRow& r : report.rows) rows.push_back(row_json(r));
  j["layers"] = std::move(rows);
  j["totals"] = row_json(report.totals);
  return j.dump(2) + "\n";
}

}  // namespace cgpl
