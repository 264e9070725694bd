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

#include "cgpl/dialect.hpp"
#include "cgpl/error.hpp"
#include "fs_util.hpp"

namespace cgpl {
namespace {

const MarkerMatcher& defaults() {
  static const MarkerMatcher m{DialectConfig{}};
  return m;
}

TEST(MarkerMatcherTest, BlockMarkers) {
  LineMarker m = defaults().classify("[DEFINE ClassImpl FOR MMClass]\n", ArtifactKind::kTemplate);
  EXPECT_EQ(m.kind, MarkerKind::kBlockOpen);
  EXPECT_EQ(m.name, "ClassImpl");
  EXPECT_EQ(m.qualifier, std::optional<std::string>("MMClass"));
  EXPECT_EQ(m.column, 1);

  m = defaults().classify("    [DEFINE Untyped]\r\n", ArtifactKind::kTemplate);
  EXPECT_EQ(m.kind, MarkerKind::kBlockOpen);
  EXPECT_FALSE(m.qualifier.has_value());
  EXPECT_EQ(m.column, 5);

  EXPECT_EQ(defaults().classify("[ENDDEFINE]", ArtifactKind::kTemplate).kind,
            MarkerKind::kBlockClose);
}

TEST(MarkerMatcherTest, CommentMarkersToleratesSpacing) {
  for (const char* line : {"[REM]BEGIN VR:SetterMethodBody [ENDREM]",
                           "[REM] BEGIN VR: SetterMethodBody[ENDREM]"}) {
    const LineMarker m = defaults().classify(line, ArtifactKind::kTemplate);
    EXPECT_EQ(m.kind, MarkerKind::kCommentBegin) << line;
    EXPECT_EQ(m.name, "SetterMethodBody");
  }
  EXPECT_EQ(defaults().classify("[REM]END VR:X[ENDREM]", ArtifactKind::kTemplate).kind,
            MarkerKind::kCommentEnd);
}

TEST(MarkerMatcherTest, IncludeSuperVariants) {
  for (const char* line : {"[REM][INCLUDE-SUPER][ENDREM]", "  [REM][INCLUDE -SUPER] [ENDREM]\n",
                           "// INCLUDE-SUPER"}) {
    EXPECT_TRUE(defaults().is_include_super(line)) << line;
  }
  EXPECT_FALSE(defaults().is_include_super("[REM]INCLUDE SUPER[ENDREM]"));
}

TEST(MarkerMatcherTest, HelperMarkersOnlyApplyToHelpers) {
  EXPECT_EQ(defaults().classify("// BEGIN VR:Body", ArtifactKind::kHelper).kind,
            MarkerKind::kCommentBegin);
  EXPECT_EQ(defaults().classify("// BEGIN VR:Body", ArtifactKind::kTemplate).kind,
            MarkerKind::kNone);
  EXPECT_EQ(defaults().classify("[DEFINE X]", ArtifactKind::kHelper).kind, MarkerKind::kNone);
  EXPECT_EQ(defaults().classify("[DEFINE X]", ArtifactKind::kOpaque).kind, MarkerKind::kNone);
}

TEST(MarkerMatcherTest, InlineMarkerTextIsNotAMarker) {
  const std::string line = "x [DEFINE Foo] y";
  EXPECT_EQ(defaults().classify(line, ArtifactKind::kTemplate).kind, MarkerKind::kNone);
  EXPECT_TRUE(defaults().has_inline_marker(line, ArtifactKind::kTemplate));
  EXPECT_FALSE(defaults().has_inline_marker("plain text", ArtifactKind::kTemplate));
}

TEST(MarkerMatcherTest, SynthesizedMarkersClassifyAsThemselves) {
  const auto& m = defaults();
  EXPECT_EQ(m.open_marker(ArtifactKind::kTemplate, true, "A", std::string("T")), "[DEFINE A FOR T]");
  EXPECT_EQ(m.open_marker(ArtifactKind::kTemplate, true, "A", std::nullopt), "[DEFINE A]");
  EXPECT_EQ(m.open_marker(ArtifactKind::kTemplate, false, "A", std::nullopt),
            "[REM]BEGIN VR:A[ENDREM]");
  EXPECT_EQ(m.close_marker(ArtifactKind::kHelper, false, "A"), "// END VR:A");
  EXPECT_TRUE(m.is_include_super(m.include_super_marker(ArtifactKind::kTemplate)));
  EXPECT_TRUE(m.is_include_super(m.include_super_marker(ArtifactKind::kHelper)));
}

TEST(DialectTest, KindFollowsExtension) {
  const DialectConfig d;
  EXPECT_EQ(d.kind_for("base/Class.xpt"), ArtifactKind::kTemplate);
  EXPECT_EQ(d.kind_for("util/Helper.java"), ArtifactKind::kHelper);
  EXPECT_EQ(d.kind_for("README"), ArtifactKind::kOpaque);
  EXPECT_EQ(d.kind_for("x.png"), ArtifactKind::kOpaque);
}

TEST(DialectTest, ParsesOverridesAndRoundTrips) {
  const DialectConfig d = parse_dialect(
      "# a Jinja-like language\n"
      "block_open = \\{%\\s*block\\s+([A-Za-z_][A-Za-z0-9_]*)\\s*%\\}\n"
      "block_close = \\{%\\s*endblock\\s*%\\}\n"
      "block_open_format = {% block {name} %}\n"
      "block_open_untyped_format = {% block {name} %}\n"
      "block_close_format = {% endblock %}\n"
      "template_extensions = j2, .html\n"
      "include_statement_format = {% include \"{path}\" %}\n");
  EXPECT_EQ(d.template_extensions, (std::vector<std::string>{"j2", "html"}));
  EXPECT_EQ(d.include_statement_format, std::optional<std::string>("{% include \"{path}\" %}"));
  const MarkerMatcher m(d);
  EXPECT_EQ(m.classify("{% block content %}", ArtifactKind::kTemplate).name, "content");
  EXPECT_EQ(render_dialect(parse_dialect(render_dialect(d))), render_dialect(d));
}

TEST(DialectTest, RejectsBadConfigurations) {
  auto code = [](const std::string& text) {
    try {
      parse_dialect(text, "cgpl.dialect");
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kIoError;
  };
  EXPECT_EQ(code("colour = red\n"), ErrorCode::kInvalidDialect);
  EXPECT_EQ(code("no equals sign\n"), ErrorCode::kInvalidDialect);
  EXPECT_EQ(code("block_open = ([\n"), ErrorCode::kInvalidDialect);
  // The close pattern would also swallow opening markers.
  EXPECT_EQ(code("block_close = \\[.*\\]\n"), ErrorCode::kInvalidDialect);
  EXPECT_EQ(code("block_close_format = [END]\n"), ErrorCode::kInvalidDialect);
}

TEST(DialectTest, LoadsFromProductLineRoot) {
  testing::TempDir dir;
  EXPECT_EQ(load_dialect(dir.path()).template_extensions, DialectConfig{}.template_extensions);
  testing::write_file(dir / "cgpl.dialect", "template_extensions = tpl\n");
  EXPECT_EQ(load_dialect(dir.path()).template_extensions, std::vector<std::string>{"tpl"});
}

}  // namespace
}  // namespace cgpl
