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

#include "cgpl/pcl.hpp"
#include "cgpl/pipeline.hpp"
#include "fs_util.hpp"
#include "generators.hpp"

namespace cgpl {
namespace {

ErrorCode code_of(const std::string& text) {
  try {
    parse_pcl(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kIoError;
}

TEST(ParsePclTest, BundledConfiguration) {
  const ProductConfig cfg =
      load_pcl(testing::source_dir() / "corpus/factory/FactoryGenerator.pcl");
  EXPECT_EQ(cfg.generator_name, "FactoryGenerator");
  EXPECT_EQ(cfg.output_dir, std::optional<std::string>("gen"));
  EXPECT_EQ(cfg.selected_layers, std::vector<std::string>{"factoryVariant"});
}

TEST(ParsePclTest, OutputDefaultsToGen) {
  const ProductConfig cfg = parse_pcl("generator G { layers = \"a\", \"b\"; }");
  EXPECT_FALSE(cfg.output_dir.has_value());
  EXPECT_EQ(cfg.output_or_default(), "gen");
  EXPECT_EQ(cfg.selected_layers, (std::vector<std::string>{"a", "b"}));
}

TEST(ParsePclTest, Errors) {
  EXPECT_EQ(code_of("generator G { layers = \"\"; }"), ErrorCode::kEmptySelection);
  EXPECT_EQ(code_of("generator G { layers = \"a\", \"a\"; }"), ErrorCode::kSyntaxError);
  EXPECT_EQ(code_of("generator G { layers = \"not a name\"; }"), ErrorCode::kSyntaxError);
  EXPECT_EQ(code_of("generator G { output = \"\"; layers = \"a\"; }"), ErrorCode::kSyntaxError);
  EXPECT_EQ(code_of("generator G { layers = \"a\" }"), ErrorCode::kSyntaxError);
  EXPECT_EQ(code_of("generator G { }"), ErrorCode::kSyntaxError);
  EXPECT_EQ(code_of("generator G { layers = \"a\"; } extra"), ErrorCode::kSyntaxError);
  EXPECT_EQ(code_of("generator G { layers = \"a\"; output = \"x\"; }"), ErrorCode::kSyntaxError);
  EXPECT_EQ(code_of("generator { layers = \"a\"; }"), ErrorCode::kSyntaxError);
  EXPECT_EQ(code_of(""), ErrorCode::kSyntaxError);
}

TEST(ParsePclTest, ErrorsNameLineAndColumn) {
  try {
    parse_pcl("generator G {\n  layers = \"a\"\n}\n", "g.pcl");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.path(), "g.pcl");
    EXPECT_EQ(e.span().line_begin, 3);
    EXPECT_EQ(e.span().column_begin, 1);
  }
}

TEST(RenderPclTest, RandomConfigsAreFixpoints) {
  testing::Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const ProductConfig cfg = testing::random_pcl(rng);
    const std::string text = render_pcl(cfg);
    ProductConfig again;
    ASSERT_NO_THROW(again = parse_pcl(text)) << text;
    ASSERT_EQ(again, cfg) << text;
    ASSERT_EQ(render_pcl(again), text);
  }
}

TEST(FindPclTest, NeedsExactlyOneFile) {
  testing::TempDir dir;
  auto code = [&] {
    try {
      find_pcl(dir.path());
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kIoError;
  };
  EXPECT_EQ(code(), ErrorCode::kUsage);
  testing::write_file(dir / "a.pcl", "");
  EXPECT_EQ(find_pcl(dir.path()), dir / "a.pcl");
  testing::write_file(dir / "b.pcl", "");
  EXPECT_EQ(code(), ErrorCode::kUsage);
}

}  // namespace
}  // namespace cgpl
