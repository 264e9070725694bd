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

// Size metrics of a product line, one row per layer. Lines are counted only
// when they contain something other than blanks.

#ifndef CGPL_STATS_HPP
#define CGPL_STATS_HPP

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cgpl/model.hpp"

namespace cgpl {

struct StatsRow {
  std::string layer;
  std::size_t tloc = 0;
  std::size_t define_count = 0;
  std::size_t refined_define_count = 0;
  std::size_t hloc = 0;
  std::size_t helper_count = 0;
  std::size_t refined_helper_count = 0;

  bool operator==(const StatsRow&) const = default;
};

struct StatsReport {
  std::vector<StatsRow> rows;  // sorted by layer name
  StatsRow totals;             // layer is "total"
};

// Column headers of the table, in order.
inline constexpr std::array<std::string_view, 6> kStatsColumns = {
    "TLOC", "Number DEFINE", "Number refined DEFINE",
    "HLOC", "Number helper", "Number refined helper"};

std::size_t count_nonblank_lines(std::string_view text);

// A region counts as refined when at least one bound refinement of any layer
// targets it.
StatsReport compute_stats(const ProductLine& pl);

std::string render_stats_table(const StatsReport& report);
std::string render_stats_json(const StatsReport& report);

}  // namespace cgpl

#endif  // CGPL_STATS_HPP
