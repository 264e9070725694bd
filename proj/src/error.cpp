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

#include "cgpl/error.hpp"

namespace cgpl {

namespace {

std::string compose_what(ErrorCode code, const std::string& message,
                         const std::string& path, const SourceSpan& span) {
  std::string out(error_code_name(code));
  out += ": ";
  if (!path.empty()) {
    out += path;
    if (span.known()) out += ":" + to_string(span);
    out += ": ";
  } else if (span.known()) {
    out += to_string(span) + ": ";
  }
  out += message;
  return out;
}

}  // namespace

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInvalidDialect: return "InvalidDialect";
    case ErrorCode::kMarkerMismatch: return "MarkerMismatch";
    case ErrorCode::kDuplicateVR: return "DuplicateVR";
    case ErrorCode::kUnknownArtifact: return "UnknownArtifact";
    case ErrorCode::kUnknownVR: return "UnknownVR";
    case ErrorCode::kAmbiguousVR: return "AmbiguousVR";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kUnknownLayer: return "UnknownLayer";
    case ErrorCode::kSelfRefinement: return "SelfRefinement";
    case ErrorCode::kEmptySelection: return "EmptySelection";
    case ErrorCode::kPathCollision: return "PathCollision";
    case ErrorCode::kDanglingSuper: return "DanglingSuper";
    case ErrorCode::kUnresolvedConflicts: return "UnresolvedConflicts";
    case ErrorCode::kUsage: return "Usage";
  }
  return "Unknown";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIoError:
      return 3;
    case ErrorCode::kPathCollision:
    case ErrorCode::kDanglingSuper:
    case ErrorCode::kUnresolvedConflicts:
      return 1;
    default:
      return 2;
  }
}

std::string to_string(const SourceSpan& span) {
  std::string out =
      std::to_string(span.line_begin) + ":" + std::to_string(span.column_begin);
  if (span.line_end > 0 && (span.line_end != span.line_begin ||
                            span.column_end != span.column_begin)) {
    out += "-" + std::to_string(span.line_end) + ":" +
           std::to_string(span.column_end);
  }
  return out;
}

std::string format_diagnostic(const Diagnostic& d) {
  std::string out;
  if (!d.path.empty()) {
    out += d.path;
    if (d.span.known()) {
      out += ":" + std::to_string(d.span.line_begin) + ":" +
             std::to_string(d.span.column_begin);
    }
    out += ": ";
  }
  out += d.severity == Severity::kError ? "error: " : "warning: ";
  out += d.message;
  return out;
}

Error::Error(ErrorCode code, std::string message, std::string path,
             SourceSpan span)
    : std::runtime_error(compose_what(code, message, path, span)),
      code_(code),
      message_(std::move(message)),
      path_(std::move(path)),
      span_(span) {}

Error Error::with_location(std::string path, SourceSpan span,
                           std::string_view context) const {
  std::string message = message_;
  if (!context.empty()) message = std::string(context) + ": " + message;
  return Error(code_, std::move(message), std::move(path), span);
}

Diagnostic Error::to_diagnostic() const {
  return Diagnostic{Severity::kError, path_, span_,
                    std::string(error_code_name(code_)) + ": " + message_};
}

}  // namespace cgpl
