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

#ifndef CGPL_DIALECT_HPP
#define CGPL_DIALECT_HPP

#include <filesystem>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

namespace cgpl {

enum class ArtifactKind { kTemplate, kHelper, kOpaque };

std::string_view artifact_kind_name(ArtifactKind kind);

// Marker vocabulary of a template language. Patterns are ECMAScript regular
// expressions matched against a whole line with surrounding blanks removed;
// the first capture group is the region name, the second (block_open only)
// the optional type qualifier. The *_format strings are used when markers
// have to be synthesized and accept `{name}` / `{type}` placeholders.
struct DialectConfig {
  std::string block_open =
      R"(\[DEFINE\s+([A-Za-z_][A-Za-z0-9_]*)(?:\s+FOR\s+([A-Za-z_][A-Za-z0-9_]*))?\s*\])";
  std::string block_close = R"(\[ENDDEFINE\s*\])";
  std::string comment_vr_begin =
      R"(\[REM\]\s*BEGIN\s+VR:\s*([A-Za-z_][A-Za-z0-9_]*)\s*\[ENDREM\])";
  std::string comment_vr_end =
      R"(\[REM\]\s*END\s+VR:\s*([A-Za-z_][A-Za-z0-9_]*)\s*\[ENDREM\])";
  std::string include_super =
      R"(\[REM\]\s*\[\s*INCLUDE\s*-\s*SUPER\s*\]\s*\[ENDREM\])";

  std::string helper_vr_begin =
      R"(//\s*BEGIN\s+VR:\s*([A-Za-z_][A-Za-z0-9_]*)\s*)";
  std::string helper_vr_end = R"(//\s*END\s+VR:\s*([A-Za-z_][A-Za-z0-9_]*)\s*)";
  std::string helper_include_super = R"(//\s*INCLUDE\s*-\s*SUPER\s*)";

  std::string block_open_format = "[DEFINE {name} FOR {type}]";
  std::string block_open_untyped_format = "[DEFINE {name}]";
  std::string block_close_format = "[ENDDEFINE]";
  std::string comment_vr_begin_format = "[REM]BEGIN VR:{name}[ENDREM]";
  std::string comment_vr_end_format = "[REM]END VR:{name}[ENDREM]";
  std::string include_super_format = "[REM][INCLUDE-SUPER][ENDREM]";
  std::string helper_vr_begin_format = "// BEGIN VR:{name}";
  std::string helper_vr_end_format = "// END VR:{name}";
  std::string helper_include_super_format = "// INCLUDE-SUPER";

  std::vector<std::string> template_extensions{"xpt"};
  std::vector<std::string> helper_extensions{"java"};

  // When set, whole-artifact before/after refinements emit this directive
  // (placeholders `{signature}` and `{path}`) instead of inlining content.
  std::optional<std::string> include_statement_format;

  ArtifactKind kind_for(const std::filesystem::path& path) const;
};

// Parses a `key = value` document; list values are comma separated, `#`
// starts a comment line. Keys mirror the DialectConfig fields. Unknown keys
// are rejected with InvalidDialect.
DialectConfig parse_dialect(std::string_view text, std::string_view path = {});

// Reads `cgpl.dialect` under root, or returns the built-in default.
DialectConfig load_dialect(const std::filesystem::path& root);

std::string render_dialect(const DialectConfig& config);

enum class MarkerKind {
  kNone,
  kBlockOpen,
  kBlockClose,
  kCommentBegin,
  kCommentEnd,
  kIncludeSuper,
};

struct LineMarker {
  MarkerKind kind = MarkerKind::kNone;
  std::string name;
  std::optional<std::string> qualifier;
  int column = 0;  // 1-based column of the marker text within the line
};

// Compiled, immutable form of a DialectConfig. Safe to share across threads.
class MarkerMatcher {
 public:
  explicit MarkerMatcher(const DialectConfig& config);

  const DialectConfig& config() const { return config_; }

  // Classifies one line (its line terminator may be included). Throws
  // MarkerMismatch if the line matches more than one marker kind.
  LineMarker classify(std::string_view line, ArtifactKind kind) const;

  bool is_include_super(std::string_view line) const;

  // True if the line contains marker-like text that is not a whole-line
  // marker (such text is treated as literal content).
  bool has_inline_marker(std::string_view line, ArtifactKind kind) const;

  std::string open_marker(ArtifactKind kind, bool block, std::string_view name,
                          const std::optional<std::string>& qualifier) const;
  std::string close_marker(ArtifactKind kind, bool block,
                           std::string_view name) const;
  std::string include_super_marker(ArtifactKind kind) const;

 private:
  struct Pattern {
    MarkerKind kind;
    std::regex re;
  };

  DialectConfig config_;
  std::vector<Pattern> template_patterns_;
  std::vector<Pattern> helper_patterns_;
};

// Whitespace used to trim marker lines.
std::string_view trim_blanks(std::string_view s);

}  // namespace cgpl

#endif  // CGPL_DIALECT_HPP
