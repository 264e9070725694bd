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

#include <functional>
#include <map>
#include <string>

#include "cgpl/composer.hpp"
#include "cgpl/pcl.hpp"
#include "cgpl/pipeline.hpp"
#include "cgpl/scanner.hpp"
#include "fs_util.hpp"
#include "generators.hpp"
#include "json.hpp"
#include "oracles.hpp"

namespace cgpl {
namespace {

namespace fs = std::filesystem;
using testing::read_text;
using testing::write_file;

constexpr const char* kSuper = "[REM][INCLUDE-SUPER][ENDREM]\n";

// A single-region artifact; the region is its only child.
VariabilityRegion parse_region(const std::string& text) {
  return parse_artifact(text, DialectConfig{}).children.at(0);
}

struct Outcome {
  std::map<std::string, std::string> files;
  CompositionResult result;
};

Outcome compose_tree(const fs::path& root, const std::vector<std::string>& selected,
                     CompositionOptions options = {}) {
  const auto loaded = load_product_line(root, true, options.policy);
  const ValidationResult v = validate(build_graph(loaded.product_line, selected));
  ProductConfig config;
  config.generator_name = "Test";
  config.selected_layers = selected;
  Outcome out;
  out.result = compose(loaded.product_line, config, v, options);
  for (const auto& a : out.result.artifacts) out.files[a.relative_path] = a.content;
  return out;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kUsage;
}

TEST(ComposeVrTest, BeforeAndAfterWrapTheBodyInOrder) {
  const MarkerMatcher matcher{DialectConfig{}};
  const auto target = parse_region("[DEFINE M]\nm\n[ENDDEFINE]\n");
  const auto b1 = parse_region("[DEFINE B1]\nb1\n[ENDDEFINE]\n");
  const auto b2 = parse_region("[DEFINE B2]\nb2\n[ENDDEFINE]\n");
  const auto a1 = parse_region("[DEFINE A1]\na1\n[ENDDEFINE]\n");
  const ComposedRegion r = compose_vr(
      target,
      {{RefinementOp::kAfter, &a1}, {RefinementOp::kBefore, &b1}, {RefinementOp::kBefore, &b2}},
      matcher);
  EXPECT_EQ(r.before, "b1\nb2\n");
  EXPECT_EQ(r.body, "m\n");
  EXPECT_EQ(r.after, "a1\n");
  EXPECT_EQ(r.text(), "b1\nb2\nm\na1\n");
}

TEST(ComposeVrTest, ReplaceExpandsSuperAndStacks) {
  const MarkerMatcher matcher{DialectConfig{}};
  const auto target = parse_region("[DEFINE M]\n  m\n[ENDDEFINE]\n");
  const auto r1 = parse_region(std::string("[DEFINE R1]\nx\n") + kSuper + "y\n[ENDDEFINE]\n");
  const auto r2 = parse_region(std::string("[DEFINE R2]\n") + "  [REM] [INCLUDE - SUPER] [ENDREM]\r\n" +
                               "z\n[ENDDEFINE]\n");
  EXPECT_EQ(compose_vr(target, {{RefinementOp::kReplace, &r1}}, matcher).text(),
            "x\n  m\ny\n");
  EXPECT_EQ(compose_vr(target, {{RefinementOp::kReplace, &r1}, {RefinementOp::kReplace, &r2}},
                       matcher)
                .text(),
            "x\n  m\ny\nz\n");
  const auto plain = parse_region("[DEFINE P]\np\n[ENDDEFINE]\n");
  EXPECT_EQ(compose_vr(target, {{RefinementOp::kReplace, &plain}}, matcher).text(), "p\n");
}

TEST(ComposeVrTest, SuperIntoEmptyBlockExpandsToNothingWithWarning) {
  const MarkerMatcher matcher{DialectConfig{}};
  const auto target = parse_region("[DEFINE E]\n  \n[ENDDEFINE]\n");
  ASSERT_EQ(target.kind, VrKind::kEmptyBlock);
  EXPECT_EQ(compose_vr(target, {}, matcher).text(), "  \n");
  const auto r = parse_region(std::string("[DEFINE R]\nx\n") + kSuper + "[ENDDEFINE]\n");
  std::vector<Diagnostic> warnings;
  const ComposedRegion out =
      compose_vr(target, {{RefinementOp::kReplace, &r}}, matcher, ArtifactKind::kTemplate,
                 {}, &warnings);
  EXPECT_EQ(out.text(), "x\n");
  EXPECT_FALSE(out.empty_block);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].message.find("empty region"), std::string::npos);
}

TEST(ComposeVrTest, SuperInBeforeOrAfterIsDangling) {
  const MarkerMatcher matcher{DialectConfig{}};
  const auto target = parse_region("[DEFINE M]\nm\n[ENDDEFINE]\n");
  const auto r = parse_region(std::string("[DEFINE R]\n") + kSuper + "[ENDDEFINE]\n");
  for (RefinementOp op : {RefinementOp::kBefore, RefinementOp::kAfter}) {
    EXPECT_EQ(code_of([&] { compose_vr(target, {{op, &r}}, matcher); }),
              ErrorCode::kDanglingSuper);
  }
}

TEST(ComposeVrTest, NestedRegionsKeepBlockMarkersAndDropCommentMarkers) {
  const MarkerMatcher matcher{DialectConfig{}};
  const auto target = parse_region(
      "[DEFINE M]\na\n[DEFINE Inner FOR T]\ni\n[ENDDEFINE]\n"
      "  [REM]BEGIN VR:C [ENDREM]\nc\n  [REM]END VR:C [ENDREM]\n[ENDDEFINE]\n");
  EXPECT_EQ(compose_vr(target, {}, matcher).text(),
            "a\n[DEFINE Inner FOR T]\ni\n[ENDDEFINE]\nc\n");
  CompositionOptions keep;
  keep.keep_markers = true;
  EXPECT_EQ(compose_vr(target, {}, matcher, ArtifactKind::kTemplate, keep).text(),
            "a\n[DEFINE Inner FOR T]\ni\n[ENDDEFINE]\n"
            "  [REM]BEGIN VR:C [ENDREM]\nc\n  [REM]END VR:C [ENDREM]\n");
}

TEST(ComposeTest, BundledExampleMatchesGolden) {
  const fs::path root = testing::source_dir() / "corpus/factory";
  for (auto policy : {ExecutionPolicy::kSerial, ExecutionPolicy::kParallel}) {
    CompositionOptions options;
    options.policy = policy;
    const Outcome out = compose_tree(root, {"factoryVariant"}, options);
    ASSERT_EQ(out.files.size(), 1u);
    EXPECT_EQ(out.files.at("base/Class.xpt"),
              read_text(testing::source_dir() / "tests/data/golden/factory/base/Class.xpt"));
    EXPECT_TRUE(out.result.warnings.empty());
  }
}

TEST(ComposeTest, KeepMarkersRetainsCommentRegions) {
  CompositionOptions options;
  options.keep_markers = true;
  const Outcome out =
      compose_tree(testing::source_dir() / "corpus/factory", {"factoryVariant"}, options);
  const std::string& text = out.files.at("base/Class.xpt");
  EXPECT_NE(text.find("[REM]BEGIN VR:SetterMethodBody [ENDREM]"), std::string::npos);
  EXPECT_NE(text.find("assert([Name] != null);"), std::string::npos);
}

class StackTest : public ::testing::Test {
 protected:
  void SetUp() override {
    write_file(dir_ / "base/t.xpt", "head\n[DEFINE Main]\nm\n[ENDDEFINE]\ntail\n");
    write_file(dir_ / "L1/f/L1.xpt", std::string("[DEFINE R]\na\n") + kSuper + "[ENDDEFINE]\n");
    write_file(dir_ / "L2/f/L2.xpt", std::string("[DEFINE R]\nb\n") + kSuper + "[ENDDEFINE]\n");
    write_file(dir_ / "layers.ldl",
               "layer L1 refines base { f.L1:R replaces t:Main; }\n"
               "layer L2 refines L1 { f.L2:R replaces f.L1:R; }\n");
  }
  testing::TempDir dir_;
};

TEST_F(StackTest, StackedSuperComposesInnermostFirst) {
  const Outcome out = compose_tree(dir_.path(), {"L2"});
  ASSERT_EQ(out.files.size(), 1u) << "fragments must not be emitted";
  EXPECT_EQ(out.files.at("t.xpt"), "head\n[DEFINE Main]\nb\na\nm\n[ENDDEFINE]\ntail\n");

  const auto& prov = out.result.artifacts[0].provenance;
  ASSERT_EQ(prov.size(), 2u);
  EXPECT_EQ(prov[0], (ProvenanceStep{"L1", Signature::parse("f.L1:R"),
                                     Signature::parse("t:Main"), RefinementOp::kReplace}));
  EXPECT_EQ(prov[1].layer, "L2");
  EXPECT_EQ(prov[1].refined.to_string(), "f.L1:R");

  const auto doc = nlohmann::json::parse(provenance_json(out.result.artifacts));
  ASSERT_EQ(doc.size(), 1u);
  EXPECT_EQ(doc[0]["artifact"], "t.xpt");
  EXPECT_EQ(doc[0]["layers"], nlohmann::json({"base", "L1", "L2"}));
  EXPECT_EQ(doc[0]["steps"][0]["op"], "replaces");
  EXPECT_EQ(doc[0]["steps"][1]["refining"], "f.L2:R");
}

TEST_F(StackTest, SelectingOnlyTheBaseEmitsItsFragmentsVerbatim) {
  const Outcome out = compose_tree(dir_.path(), {"base"});
  EXPECT_EQ(out.files.size(), 1u);
  EXPECT_EQ(out.files.at("t.xpt"), "head\n[DEFINE Main]\nm\n[ENDDEFINE]\ntail\n");
}

TEST_F(StackTest, SelectionMustBeInTheClosure) {
  const auto loaded = load_product_line(dir_.path());
  const ValidationResult v = validate(build_graph(loaded.product_line, {"L1"}));
  ProductConfig config;
  config.selected_layers = {"L2"};
  EXPECT_EQ(code_of([&] { compose(loaded.product_line, config, v); }),
            ErrorCode::kUnknownLayer);
}

TEST_F(StackTest, WholeArtifactIncludeDirective) {
  write_file(dir_ / "cgpl.dialect", "include_statement_format = [INCLUDE {path} AS {signature}]\n");
  write_file(dir_ / "L3/g/Extra.xpt", "extra\n");
  write_file(dir_ / "layers.ldl",
             "layer L1 refines base { f.L1:R replaces t:Main; }\n"
             "layer L3 refines base { g.Extra after t; }\n");
  const Outcome out = compose_tree(dir_.path(), {"L1", "L3"});
  EXPECT_EQ(out.files.at("t.xpt"),
            "head\n[DEFINE Main]\na\nm\n[ENDDEFINE]\ntail\n[INCLUDE g/Extra.xpt AS g.Extra]\n");
  EXPECT_EQ(out.files.at("g/Extra.xpt"), "extra\n");
}

TEST_F(StackTest, WholeArtifactAfterWithoutHookInlines) {
  write_file(dir_ / "L3/g/Extra.xpt", "extra\n");
  write_file(dir_ / "layers.ldl", "layer L3 refines base { g.Extra after t; }\n");
  const Outcome out = compose_tree(dir_.path(), {"L3"});
  EXPECT_EQ(out.files.size(), 1u);
  EXPECT_EQ(out.files.at("t.xpt"), "head\n[DEFINE Main]\nm\n[ENDDEFINE]\ntail\nextra\n");
}

TEST(ComposeTest, ConflictsAndCollisionsAreRefused) {
  const fs::path data = testing::source_dir() / "tests/data";
  EXPECT_EQ(code_of([&] { compose_tree(data / "conflicts", {"L3"}); }),
            ErrorCode::kUnresolvedConflicts);
  try {
    compose_tree(data / "collision", {"ext"});
    ADD_FAILURE() << "collision not detected";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPathCollision);
    EXPECT_NE(e.message().find("'ext'"), std::string::npos);
    EXPECT_NE(e.message().find("'base'"), std::string::npos);
  }
}

TEST(ComposeTest, AgreesWithSpliceOracleSerialAndParallel) {
  testing::Rng rng(77);
  for (int i = 0; i < 60; ++i) {
    const testing::ComposerFixture fx = testing::random_composer_fixture(rng);
    testing::TempDir dir("cgpl-compose");
    fx.write(dir.path());
    const auto expected = testing::splice_oracle(fx);
    for (auto policy : {ExecutionPolicy::kSerial, ExecutionPolicy::kParallel}) {
      CompositionOptions options;
      options.policy = policy;
      const Outcome out = compose_tree(dir.path(), fx.layers, options);
      ASSERT_EQ(out.files, expected) << "fixture " << i << "\n" << fx.ldl();
    }
  }
}

TEST(WriteVariantTest, WritesSidecarLastAndReplacesPreviousVariant) {
  testing::TempDir dir("cgpl-write");
  const fs::path out = dir / "gen";
  std::vector<ComposedArtifact> artifacts{{"a/x.txt", "L", "x\n", {}},
                                          {"b.txt", "L", "b\n", {}}};
  const WriteSummary first = write_variant(artifacts, out);
  EXPECT_EQ(first.files,
            (std::vector<std::string>{"a/x.txt", "b.txt", std::string(kProvenanceFile)}));
  EXPECT_EQ(read_text(out / "a/x.txt"), "x\n");

  artifacts.pop_back();
  write_variant(artifacts, out);
  EXPECT_FALSE(fs::exists(out / "b.txt"));
  std::size_t entries = 0;
  for (const auto& e : fs::directory_iterator(dir.path())) {
    (void)e;
    ++entries;
  }
  EXPECT_EQ(entries, 1u) << "staging directories left behind";
}

TEST(WriteVariantTest, RefusesForeignDirectories) {
  testing::TempDir dir("cgpl-write");
  write_file(dir / "keep/notes.txt", "mine\n");
  EXPECT_EQ(code_of([&] { write_variant({}, dir / "keep"); }), ErrorCode::kIoError);
  EXPECT_EQ(read_text(dir / "keep/notes.txt"), "mine\n");
  write_file(dir / "file", "");
  EXPECT_EQ(code_of([&] { write_variant({}, dir / "file"); }), ErrorCode::kIoError);
  fs::create_directories(dir / "empty");
  EXPECT_NO_THROW(write_variant({}, dir / "empty"));
  EXPECT_TRUE(fs::exists(dir / "empty" / std::string(kProvenanceFile)));
}

}  // namespace
}  // namespace cgpl
