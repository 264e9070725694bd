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

#include "cgpl/dialect.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "cgpl/error.hpp"

namespace cgpl {

namespace {

constexpr std::string_view kDialectFile = "cgpl.dialect";

std::string replace_all(std::string text, std::string_view from,
                        std::string_view to) {
  std::size_t pos = 0;
  while ((pos = text.find(from, pos)) != std::string::npos) {
    text.replace(pos, from.size(), to);
    pos += to.size();
  }
  return text;
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    std::size_t comma = value.find(',', start);
    if (comma == std::string_view::npos) comma = value.size();
    std::string_view item = trim_blanks(value.substr(start, comma - start));
    if (!item.empty()) {
      if (item.front() == '.') item.remove_prefix(1);
      out.emplace_back(item);
    }
    start = comma + 1;
  }
  return out;
}

std::string join_list(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ", ";
    out += items[i];
  }
  return out;
}

using StringField = std::string DialectConfig::*;

const std::vector<std::pair<std::string_view, StringField>>& string_fields() {
  static const std::vector<std::pair<std::string_view, StringField>> kFields = {
      {"block_open", &DialectConfig::block_open},
      {"block_close", &DialectConfig::block_close},
      {"comment_vr_begin", &DialectConfig::comment_vr_begin},
      {"comment_vr_end", &DialectConfig::comment_vr_end},
      {"include_super", &DialectConfig::include_super},
      {"helper_vr_begin", &DialectConfig::helper_vr_begin},
      {"helper_vr_end", &DialectConfig::helper_vr_end},
      {"helper_include_super", &DialectConfig::helper_include_super},
      {"block_open_format", &DialectConfig::block_open_format},
      {"block_open_untyped_format", &DialectConfig::block_open_untyped_format},
      {"block_close_format", &DialectConfig::block_close_format},
      {"comment_vr_begin_format", &DialectConfig::comment_vr_begin_format},
      {"comment_vr_end_format", &DialectConfig::comment_vr_end_format},
      {"include_super_format", &DialectConfig::include_super_format},
      {"helper_vr_begin_format", &DialectConfig::helper_vr_begin_format},
      {"helper_vr_end_format", &DialectConfig::helper_vr_end_format},
      {"helper_include_super_format",
       &DialectConfig::helper_include_super_format},
  };
  return kFields;
}

std::regex compile(std::string_view key, const std::string& pattern) {
  if (pattern.empty()) {
    throw Error(ErrorCode::kInvalidDialect,
                "pattern '" + std::string(key) + "' is empty");
  }
  try {
    return std::regex(pattern, std::regex::ECMAScript | std::regex::optimize);
  } catch (const std::regex_error& e) {
    throw Error(ErrorCode::kInvalidDialect, "pattern '" + std::string(key) +
                                                "' does not compile: " +
                                                e.what());
  }
}

std::string_view marker_kind_name(MarkerKind kind) {
  switch (kind) {
    case MarkerKind::kNone: return "text";
    case MarkerKind::kBlockOpen: return "block open";
    case MarkerKind::kBlockClose: return "block close";
    case MarkerKind::kCommentBegin: return "region begin";
    case MarkerKind::kCommentEnd: return "region end";
    case MarkerKind::kIncludeSuper: return "include-super";
  }
  return "?";
}

}  // namespace

std::string_view artifact_kind_name(ArtifactKind kind) {
  switch (kind) {
    case ArtifactKind::kTemplate: return "template";
    case ArtifactKind::kHelper: return "helper";
    case ArtifactKind::kOpaque: return "opaque";
  }
  return "?";
}

std::string_view trim_blanks(std::string_view s) {
  constexpr std::string_view kBlanks = " \t\r\n\f\v";
  std::size_t b = s.find_first_not_of(kBlanks);
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(kBlanks);
  return s.substr(b, e - b + 1);
}

ArtifactKind DialectConfig::kind_for(const std::filesystem::path& path) const {
  std::string ext = path.extension().string();
  if (!ext.empty() && ext.front() == '.') ext.erase(0, 1);
  if (ext.empty()) return ArtifactKind::kOpaque;
  auto has = [&](const std::vector<std::string>& list) {
    return std::find(list.begin(), list.end(), ext) != list.end();
  };
  if (has(template_extensions)) return ArtifactKind::kTemplate;
  if (has(helper_extensions)) return ArtifactKind::kHelper;
  return ArtifactKind::kOpaque;
}

DialectConfig parse_dialect(std::string_view text, std::string_view path) {
  DialectConfig config;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim_blanks(raw);
    if (line.empty() || line.front() == '#') continue;
    std::size_t eq = line.find('=');
    SourceSpan span{line_no, 1, line_no, static_cast<int>(raw.size())};
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kInvalidDialect, "expected 'key = value'",
                  std::string(path), span);
    }
    std::string key(trim_blanks(line.substr(0, eq)));
    std::string_view value = trim_blanks(line.substr(eq + 1));
    if (key == "template_extensions") {
      config.template_extensions = split_list(value);
      continue;
    }
    if (key == "helper_extensions") {
      config.helper_extensions = split_list(value);
      continue;
    }
    if (key == "include_statement_format") {
      if (value.empty()) {
        config.include_statement_format.reset();
      } else {
        config.include_statement_format = std::string(value);
      }
      continue;
    }
    const auto& fields = string_fields();
    auto it = std::find_if(fields.begin(), fields.end(),
                           [&](const auto& f) { return f.first == key; });
    if (it == fields.end()) {
      throw Error(ErrorCode::kInvalidDialect, "unknown key '" + key + "'",
                  std::string(path), span);
    }
    config.*(it->second) = std::string(value);
  }
  // Fails early on bad patterns or overlapping marker kinds.
  MarkerMatcher check(config);
  return config;
}

DialectConfig load_dialect(const std::filesystem::path& root) {
  const std::filesystem::path file = root / kDialectFile;
  std::error_code ec;
  if (!std::filesystem::exists(file, ec)) return DialectConfig{};
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot read dialect file",
                file.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_dialect(buffer.str(), file.string());
}

std::string render_dialect(const DialectConfig& config) {
  std::string out;
  for (const auto& [key, field] : string_fields()) {
    out += std::string(key) + " = " + config.*field + "\n";
  }
  out += "template_extensions = " + join_list(config.template_extensions) +
         "\n";
  out += "helper_extensions = " + join_list(config.helper_extensions) + "\n";
  if (config.include_statement_format) {
    out += "include_statement_format = " + *config.include_statement_format +
           "\n";
  }
  return out;
}

MarkerMatcher::MarkerMatcher(const DialectConfig& config) : config_(config) {
  template_patterns_ = {
      {MarkerKind::kBlockOpen, compile("block_open", config.block_open)},
      {MarkerKind::kBlockClose, compile("block_close", config.block_close)},
      {MarkerKind::kCommentBegin,
       compile("comment_vr_begin", config.comment_vr_begin)},
      {MarkerKind::kCommentEnd,
       compile("comment_vr_end", config.comment_vr_end)},
      {MarkerKind::kIncludeSuper,
       compile("include_super", config.include_super)},
  };
  helper_patterns_ = {
      {MarkerKind::kCommentBegin,
       compile("helper_vr_begin", config.helper_vr_begin)},
      {MarkerKind::kCommentEnd, compile("helper_vr_end", config.helper_vr_end)},
      {MarkerKind::kIncludeSuper,
       compile("helper_include_super", config.helper_include_super)},
  };

  // Every synthesized marker must be recognized as exactly its own kind.
  auto expect = [&](const std::string& text, ArtifactKind kind,
                    MarkerKind want) {
    LineMarker got;
    try {
      got = classify(text, kind);
    } catch (const Error& e) {
      throw Error(ErrorCode::kInvalidDialect, e.message());
    }
    if (got.kind != want) {
      throw Error(ErrorCode::kInvalidDialect,
                  "marker format '" + text + "' is recognized as " +
                      std::string(marker_kind_name(got.kind)) +
                      ", expected " + std::string(marker_kind_name(want)));
    }
  };
  const std::optional<std::string> type = std::string("SampleType");
  expect(open_marker(ArtifactKind::kTemplate, true, "Sample", type),
         ArtifactKind::kTemplate, MarkerKind::kBlockOpen);
  expect(open_marker(ArtifactKind::kTemplate, true, "Sample", std::nullopt),
         ArtifactKind::kTemplate, MarkerKind::kBlockOpen);
  expect(close_marker(ArtifactKind::kTemplate, true, "Sample"),
         ArtifactKind::kTemplate, MarkerKind::kBlockClose);
  expect(open_marker(ArtifactKind::kTemplate, false, "Sample", std::nullopt),
         ArtifactKind::kTemplate, MarkerKind::kCommentBegin);
  expect(close_marker(ArtifactKind::kTemplate, false, "Sample"),
         ArtifactKind::kTemplate, MarkerKind::kCommentEnd);
  expect(include_super_marker(ArtifactKind::kTemplate), ArtifactKind::kTemplate,
         MarkerKind::kIncludeSuper);
  expect(open_marker(ArtifactKind::kHelper, false, "Sample", std::nullopt),
         ArtifactKind::kHelper, MarkerKind::kCommentBegin);
  expect(close_marker(ArtifactKind::kHelper, false, "Sample"),
         ArtifactKind::kHelper, MarkerKind::kCommentEnd);
  expect(include_super_marker(ArtifactKind::kHelper), ArtifactKind::kHelper,
         MarkerKind::kIncludeSuper);
}

LineMarker MarkerMatcher::classify(std::string_view line,
                                   ArtifactKind kind) const {
  LineMarker result;
  if (kind == ArtifactKind::kOpaque) return result;
  std::string_view trimmed = trim_blanks(line);
  if (trimmed.empty()) return result;
  const auto& patterns =
      kind == ArtifactKind::kHelper ? helper_patterns_ : template_patterns_;
  std::match_results<std::string_view::const_iterator> m;
  for (const Pattern& p : patterns) {
    if (!std::regex_match(trimmed.begin(), trimmed.end(), m, p.re)) continue;
    if (result.kind != MarkerKind::kNone) {
      throw Error(ErrorCode::kMarkerMismatch,
                  "line '" + std::string(trimmed) + "' matches both " +
                      std::string(marker_kind_name(result.kind)) + " and " +
                      std::string(marker_kind_name(p.kind)) + " markers");
    }
    result.kind = p.kind;
    result.column = static_cast<int>(trimmed.data() - line.data()) + 1;
    if (m.size() > 1 && m[1].matched) result.name = m[1].str();
    if (p.kind == MarkerKind::kBlockOpen && m.size() > 2 && m[2].matched) {
      result.qualifier = m[2].str();
    }
  }
  return result;
}

bool MarkerMatcher::is_include_super(std::string_view line) const {
  std::string_view trimmed = trim_blanks(line);
  if (trimmed.empty()) return false;
  const std::regex& t = template_patterns_.back().re;
  const std::regex& h = helper_patterns_.back().re;
  return std::regex_match(trimmed.begin(), trimmed.end(), t) ||
         std::regex_match(trimmed.begin(), trimmed.end(), h);
}

bool MarkerMatcher::has_inline_marker(std::string_view line,
                                      ArtifactKind kind) const {
  if (kind == ArtifactKind::kOpaque) return false;
  const auto& patterns =
      kind == ArtifactKind::kHelper ? helper_patterns_ : template_patterns_;
  for (const Pattern& p : patterns) {
    if (std::regex_search(line.begin(), line.end(), p.re)) return true;
  }
  return false;
}

std::string MarkerMatcher::open_marker(
    ArtifactKind kind, bool block, std::string_view name,
    const std::optional<std::string>& qualifier) const {
  std::string format;
  if (kind == ArtifactKind::kHelper) {
    format = config_.helper_vr_begin_format;
  } else if (block) {
    format = qualifier ? config_.block_open_format
                       : config_.block_open_untyped_format;
  } else {
    format = config_.comment_vr_begin_format;
  }
  format = replace_all(std::move(format), "{name}", name);
  return replace_all(std::move(format), "{type}", qualifier.value_or(""));
}

std::string MarkerMatcher::close_marker(ArtifactKind kind, bool block,
                                        std::string_view name) const {
  std::string format;
  if (kind == ArtifactKind::kHelper) {
    format = config_.helper_vr_end_format;
  } else if (block) {
    format = config_.block_close_format;
  } else {
    format = config_.comment_vr_end_format;
  }
  return replace_all(std::move(format), "{name}", name);
}

std::string MarkerMatcher::include_super_marker(ArtifactKind kind) const {
  return kind == ArtifactKind::kHelper ? config_.helper_include_super_format
                                       : config_.include_super_format;
}

}  // namespace cgpl
