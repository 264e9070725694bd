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

#ifndef CGPL_ERROR_HPP
#define CGPL_ERROR_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cgpl {

enum class ErrorCode {
  kIoError,
  kInvalidDialect,
  kMarkerMismatch,
  kDuplicateVR,
  kUnknownArtifact,
  kUnknownVR,
  kAmbiguousVR,
  kSyntaxError,
  kUnknownLayer,
  kSelfRefinement,
  kEmptySelection,
  kPathCollision,
  kDanglingSuper,
  kUnresolvedConflicts,
  kUsage,  // bad command-line input, e.g. no unique configuration file
};

std::string_view error_code_name(ErrorCode code);

// Process exit status for a failure of the given kind:
// 1 = conflicts / composition, 2 = parse / scan / resolution, 3 = I/O.
int exit_code_for(ErrorCode code);

// 1-based line/column range. A zero line means "unknown".
struct SourceSpan {
  int line_begin = 0;
  int column_begin = 0;
  int line_end = 0;
  int column_end = 0;

  bool known() const { return line_begin > 0; }
  bool operator==(const SourceSpan&) const = default;
};

std::string to_string(const SourceSpan& span);

enum class Severity { kWarning, kError };

struct Diagnostic {
  Severity severity = Severity::kWarning;
  std::string path;
  SourceSpan span;
  std::string message;
};

std::string format_diagnostic(const Diagnostic& d);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::string path = {},
        SourceSpan span = {});

  ErrorCode code() const { return code_; }
  const std::string& message() const { return message_; }
  const std::string& path() const { return path_; }
  const SourceSpan& span() const { return span_; }

  // Re-anchors the error at a different source location, keeping the
  // original message as context.
  Error with_location(std::string path, SourceSpan span,
                      std::string_view context = {}) const;

  Diagnostic to_diagnostic() const;

 private:
  ErrorCode code_;
  std::string message_;
  std::string path_;
  SourceSpan span_;
};

}  // namespace cgpl

#endif  // CGPL_ERROR_HPP
