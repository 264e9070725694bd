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


#include <gtest/gtest.h>

#include "cgpl/pipeline.hpp"
#include "cgpl/stats.hpp"
#include "fs_util.hpp"
#include "json.hpp"

namespace cgpl {
namespace {

using testing::write_file;

TEST(StatsTest, CountsNonBlankLines) {
  EXPECT_EQ(count_nonblank_lines(""), 0u);
  EXPECT_EQ(count_nonblank_lines("a\n\n  \t\nb"), 2u);
  EXPECT_EQ(count_nonblank_lines("a\r\n\r\n b\r\n"), 2u);
}

TEST(StatsTest, BundledExample) {
  const auto loaded = load_product_line(testing::source_dir() / "corpus/factory");
  const StatsReport r = compute_stats(loaded.product_line);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.rows[0], (StatsRow{"baseVariant", 23, 4, 1, 0, 0, 0}));
  EXPECT_EQ(r.rows[1], (StatsRow{"factoryVariant", 14, 2, 0, 0, 0, 0}));
  EXPECT_EQ(r.totals, (StatsRow{"total", 37, 6, 1, 0, 0, 0}));
}

TEST(StatsTest, HelpersAndOpaqueFiles) {
  testing::TempDir dir;
  write_file(dir / "base/h/Util.java",
             "class Util {\n  // BEGIN VR:Body\n  int x;\n\n  // END VR:Body\n"
             "  // BEGIN VR:Other\n  // END VR:Other\n}\n");
  write_file(dir / "base/README", "not\ncounted\n");
  write_file(dir / "ext/h/Patch.java", "// BEGIN VR:Body\nint y;\n// END VR:Body\n");
  write_file(dir / "layers.ldl", "layer ext refines base { h.Patch:Body replaces h.Util:Body; }\n");
  const StatsReport r = compute_stats(load_product_line(dir.path()).product_line);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.rows[0], (StatsRow{"base", 0, 0, 0, 7, 2, 1}));
  EXPECT_EQ(r.rows[1], (StatsRow{"ext", 0, 0, 0, 3, 1, 0}));
}

TEST(StatsTest, RenderingsAgree) {
  StatsReport r;
  r.rows = {{"a", 10, 2, 1, 5, 1, 0}, {"long_layer", 1, 0, 0, 0, 0, 0}};
  r.totals = {"total", 11, 2, 1, 5, 1, 0};
  const std::string table = render_stats_table(r);
  EXPECT_EQ(table.substr(0, table.find('\n')),
            "Layer       TLOC  Number DEFINE  Number refined DEFINE  HLOC  Number helper"
            "  Number refined helper");
  EXPECT_NE(table.find("\n-----"), std::string::npos);
  EXPECT_NE(table.find("\ntotal         11"), std::string::npos);

  const auto j = nlohmann::json::parse(render_stats_json(r));
  EXPECT_EQ(j["columns"].size(), 6u);
  EXPECT_EQ(j["columns"][2], "Number refined DEFINE");
  EXPECT_EQ(j["layers"][1]["layer"], "long_layer");
  EXPECT_EQ(j["totals"]["hloc"], 5);
}

}  // namespace
}  // namespace cgpl
