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

#include "cgpl/scanner.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace cgpl {

namespace fs = std::filesystem;

namespace {

struct Frame {
  VariabilityRegion vr;
  std::string literal;
};

std::string describe(const VariabilityRegion& vr) {
  return "'" + vr.name + "' (opened at line " +
         std::to_string(vr.span.line_begin) + ")";
}

bool is_blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n\f\v") == std::string_view::npos;
}

void flush(Frame& frame) {
  if (frame.literal.empty()) return;
  frame.vr.body.emplace_back(std::move(frame.literal));
  frame.literal.clear();
}

void count_kinds(const VariabilityRegion& vr, std::array<std::size_t, 3>& out) {
  ++out[static_cast<std::size_t>(vr.kind)];
  for (const auto& c : vr.children) count_kinds(c, out);
}

void serialize_into(const VariabilityRegion& vr, const MarkerMatcher& matcher,
                    ArtifactKind kind, std::string& out) {
  const bool delimited = vr.markers != MarkerStyle::kNone;
  const bool block = vr.markers == MarkerStyle::kBlock;
  if (delimited) {
    out += vr.open_marker.empty()
               ? matcher.open_marker(kind, block, vr.name, vr.type_qualifier) +
                     "\n"
               : vr.open_marker;
  }
  if (vr.kind == VrKind::kEmptyBlock) out += vr.padding;
  for (const auto& seg : vr.body) {
    if (const auto* text = std::get_if<std::string>(&seg)) {
      out += *text;
    } else {
      serialize_into(vr.children[std::get<ChildRef>(seg).index], matcher, kind,
                     out);
    }
  }
  if (delimited) {
    out += vr.close_marker.empty()
               ? matcher.close_marker(kind, block, vr.name) + "\n"
               : vr.close_marker;
  }
}

}  // namespace

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    std::size_t end = nl == std::string_view::npos ? text.size() : nl + 1;
    lines.push_back(text.substr(start, end - start));
    start = end;
  }
  return lines;
}

bool is_valid_utf8(std::string_view text) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    auto c = static_cast<unsigned char>(text[i]);
    std::size_t extra = 0;
    char32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + extra >= n) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      auto cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // Overlong forms, surrogates and out-of-range code points.
    if ((extra == 1 && cp < 0x80) || (extra == 2 && cp < 0x800) ||
        (extra == 3 && cp < 0x10000) || cp > 0x10FFFF ||
        (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += extra + 1;
  }
  return true;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open file", path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIoError, "read failed", path.string());
  return buffer.str();
}

VariabilityRegion parse_artifact(std::string_view text,
                                 const MarkerMatcher& matcher,
                                 ArtifactKind kind, std::string root_name,
                                 std::string_view path,
                                 std::vector<Diagnostic>* warnings) {
  const std::string where(path);
  std::vector<Frame> stack;
  stack.emplace_back();
  {
    VariabilityRegion& root = stack.back().vr;
    root.name = std::move(root_name);
    root.kind = VrKind::kWholeArtifact;
    root.markers = MarkerStyle::kNone;
  }

  if (kind == ArtifactKind::kOpaque) {
    VariabilityRegion root = std::move(stack.back().vr);
    root.body.emplace_back(std::string(text));
    auto lines = split_lines(text);
    root.span = {1, 1, static_cast<int>(std::max<std::size_t>(lines.size(), 1)),
                 1};
    return root;
  }

  const auto lines = split_lines(text);
  int line_no = 0;
  for (std::string_view line : lines) {
    ++line_no;
    LineMarker m;
    try {
      m = matcher.classify(line, kind);
    } catch (const Error& e) {
      throw e.with_location(where, {line_no, 1, line_no, 1});
    }
    const int col_end =
        static_cast<int>(trim_blanks(line).size()) + std::max(m.column, 1) - 1;
    const SourceSpan here{line_no, m.column, line_no, col_end};
    Frame& top = stack.back();

    switch (m.kind) {
      case MarkerKind::kNone:
      case MarkerKind::kIncludeSuper:
        if (m.kind == MarkerKind::kNone && warnings != nullptr &&
            matcher.has_inline_marker(line, kind)) {
          warnings->push_back({Severity::kWarning, where,
                               {line_no, 1, line_no, 1},
                               "marker text not on a line of its own is "
                               "treated as literal content"});
        }
        top.literal.append(line);
        break;

      case MarkerKind::kBlockOpen:
      case MarkerKind::kCommentBegin: {
        flush(top);
        Frame frame;
        frame.vr.name = m.name;
        frame.vr.type_qualifier = m.qualifier;
        frame.vr.kind = VrKind::kContentBlock;
        frame.vr.markers = m.kind == MarkerKind::kBlockOpen
                               ? MarkerStyle::kBlock
                               : MarkerStyle::kComment;
        frame.vr.open_marker = std::string(line);
        frame.vr.span = here;
        stack.push_back(std::move(frame));
        break;
      }

      case MarkerKind::kBlockClose:
      case MarkerKind::kCommentEnd: {
        const bool block = m.kind == MarkerKind::kBlockClose;
        const MarkerStyle want = block ? MarkerStyle::kBlock : MarkerStyle::kComment;
        if (stack.size() == 1) {
          throw Error(ErrorCode::kMarkerMismatch,
                      block ? std::string("block close without an open block")
                            : "end of region '" + m.name +
                                  "' without a matching begin",
                      where, here);
        }
        const bool matches =
            top.vr.markers == want && (block || top.vr.name == m.name);
        if (!matches) {
          // Distinguish crossing regions from plain stray closers.
          bool opened_below = false;
          for (std::size_t i = 1; i + 1 < stack.size(); ++i) {
            const auto& vr = stack[i].vr;
            if (vr.markers == want && (block || vr.name == m.name)) {
              opened_below = true;
            }
          }
          std::string closing =
              block ? std::string("block") : "region '" + m.name + "'";
          if (opened_below) {
            throw Error(ErrorCode::kMarkerMismatch,
                        closing + " closed while " + describe(top.vr) +
                            " is still open (regions cross)",
                        where, here);
          }
          throw Error(ErrorCode::kMarkerMismatch,
                      closing + " closed but innermost open region is " +
                          describe(top.vr),
                      where, here);
        }

        flush(top);
        Frame done = std::move(stack.back());
        stack.pop_back();
        VariabilityRegion vr = std::move(done.vr);
        vr.close_marker = std::string(line);
        vr.span.line_end = line_no;
        vr.span.column_end = col_end;
        if (vr.children.empty() &&
            (vr.body.empty() ||
             (vr.body.size() == 1 &&
              is_blank(std::get<std::string>(vr.body.front()))))) {
          vr.kind = VrKind::kEmptyBlock;
          if (!vr.body.empty()) vr.padding = std::get<std::string>(vr.body.front());
          vr.body.clear();
        }

        VariabilityRegion& parent = stack.back().vr;
        for (const auto& sibling : parent.children) {
          if (sibling.name != vr.name) continue;
          bool distinct = sibling.type_qualifier && vr.type_qualifier &&
                          *sibling.type_qualifier != *vr.type_qualifier;
          if (!distinct) {
            throw Error(ErrorCode::kDuplicateVR,
                        "region '" + vr.name + "' duplicates the sibling at line " +
                            std::to_string(sibling.span.line_begin),
                        where, vr.span);
          }
        }
        parent.body.emplace_back(ChildRef{parent.children.size()});
        parent.children.push_back(std::move(vr));
        break;
      }
    }
  }

  if (stack.size() > 1) {
    const VariabilityRegion& open = stack.back().vr;
    throw Error(ErrorCode::kMarkerMismatch,
                "region " + describe(open) + " is never closed", where,
                open.span);
  }
  flush(stack.back());
  VariabilityRegion root = std::move(stack.back().vr);
  root.span = {1, 1, std::max(line_no, 1), 1};
  return root;
}

VariabilityRegion parse_artifact(std::string_view text,
                                 const DialectConfig& dialect,
                                 ArtifactKind kind) {
  return parse_artifact(text, MarkerMatcher(dialect), kind);
}

std::string serialize_artifact(const VariabilityRegion& root,
                               const MarkerMatcher& matcher,
                               ArtifactKind kind) {
  std::string out;
  serialize_into(root, matcher, kind, out);
  return out;
}

std::string serialize_artifact(const VariabilityRegion& root,
                               const DialectConfig& dialect,
                               ArtifactKind kind) {
  return serialize_artifact(root, MarkerMatcher(dialect), kind);
}

ScanResult scan_product_line(const fs::path& root, const DialectConfig& dialect,
                             ExecutionPolicy policy) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw Error(ErrorCode::kIoError, "product line root is not a directory",
                root.string());
  }
  const MarkerMatcher matcher(dialect);
  ScanResult result;
  result.product_line.root_dir = root;
  result.product_line.dialect = dialect;
  auto& warnings = result.report.warnings;

  std::vector<fs::path> layer_dirs;
  for (fs::directory_iterator it(root, ec), end; !ec && it != end;
       it.increment(ec)) {
    if (!it->is_directory(ec)) continue;
    const std::string name = it->path().filename().string();
    if (name.empty() || name.front() == '.') continue;
    if (!is_identifier(name)) {
      warnings.push_back({Severity::kWarning, it->path().string(), {},
                          "directory name is not an identifier; not a layer"});
      continue;
    }
    if (fs::exists(it->path() / kProvenanceFile, ec)) {
      warnings.push_back({Severity::kWarning, it->path().string(), {},
                          "directory holds a composed variant; not a layer"});
      continue;
    }
    layer_dirs.push_back(it->path());
  }
  if (ec) throw Error(ErrorCode::kIoError, ec.message(), root.string());
  std::sort(layer_dirs.begin(), layer_dirs.end());

  struct WorkItem {
    std::string layer;
    std::string relative;
    fs::path absolute;
    ArtifactKind kind;
    Artifact artifact;
    std::vector<Diagnostic> warnings;
  };
  std::vector<WorkItem> work;
  for (const fs::path& dir : layer_dirs) {
    const std::string layer = dir.filename().string();
    result.product_line.layers[layer].name = layer;
    std::vector<WorkItem> files;
    for (fs::recursive_directory_iterator it(dir, ec), end; !ec && it != end;
         it.increment(ec)) {
      if (!it->is_regular_file(ec)) continue;
      WorkItem item;
      item.layer = layer;
      item.absolute = it->path();
      item.relative = it->path().lexically_relative(dir).generic_string();
      item.kind = dialect.kind_for(it->path());
      files.push_back(std::move(item));
    }
    if (ec) throw Error(ErrorCode::kIoError, ec.message(), dir.string());
    std::sort(files.begin(), files.end(),
              [](const WorkItem& a, const WorkItem& b) {
                return a.relative < b.relative;
              });
    for (auto& f : files) work.push_back(std::move(f));
  }

  for_each_index(work.size(), policy, [&](std::size_t i) {
    WorkItem& item = work[i];
    std::string text = read_file(item.absolute);
    if (item.kind != ArtifactKind::kOpaque && !is_valid_utf8(text)) {
      throw Error(ErrorCode::kIoError, "file is not valid UTF-8",
                  item.absolute.string());
    }
    const std::string display = item.layer + "/" + item.relative;
    item.artifact.relative_path = item.relative;
    item.artifact.kind = item.kind;
    std::vector<std::string> stem = signature_of(item.relative, {}).artifact_path;
    item.artifact.root = parse_artifact(text, matcher, item.kind,
                                        stem.empty() ? "" : stem.back(),
                                        display, &item.warnings);
  });

  for (auto& item : work) {
    Layer& layer = result.product_line.layers[item.layer];
    ++result.report.artifacts[static_cast<std::size_t>(item.kind)];
    count_kinds(item.artifact.root, result.report.regions);
    layer.artifacts.push_back(std::move(item.artifact));
    for (auto& w : item.warnings) warnings.push_back(std::move(w));
  }
  result.report.layers_loaded = result.product_line.layers.size();
  if (result.product_line.layers.empty()) {
    warnings.push_back({Severity::kWarning, root.string(), {},
                        "product line has no layers"});
  }
  return result;
}

}  // namespace cgpl
