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

#include "lexer.hpp"

#include <algorithm>
#include <cctype>

namespace cgpl::detail {

std::string Token::describe() const {
  switch (kind) {
    case Kind::kIdentifier: return "'" + text + "'";
    case Kind::kString: return "string \"" + text + "\"";
    case Kind::kPunct: return "'" + text + "'";
    case Kind::kEnd: return "end of input";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view text, std::string_view path,
                            std::string_view punctuation) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto is_id_start = [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalpha(u) || c == '_';
  };
  auto is_id_char = [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_';
  };

  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' ||
        c == '\v') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token tok;
    tok.span.line_begin = line;
    tok.span.column_begin = col;
    if (is_id_start(c)) {
      std::size_t j = i;
      while (j < text.size() && is_id_char(text[j])) ++j;
      tok.kind = Token::Kind::kIdentifier;
      tok.text = std::string(text.substr(i, j - i));
      advance(j - i);
    } else if (c == '"') {
      tok.kind = Token::Kind::kString;
      advance(1);
      bool closed = false;
      while (i < text.size()) {
        char s = text[i];
        if (s == '"') {
          advance(1);
          closed = true;
          break;
        }
        if (s == '\n') break;
        if (s == '\\' && i + 1 < text.size() &&
            (text[i + 1] == '"' || text[i + 1] == '\\')) {
          tok.text += text[i + 1];
          advance(2);
          continue;
        }
        tok.text += s;
        advance(1);
      }
      if (!closed) {
        throw Error(ErrorCode::kSyntaxError, "unterminated string literal",
                    std::string(path), tok.span);
      }
    } else if (punctuation.find(c) != std::string_view::npos) {
      tok.kind = Token::Kind::kPunct;
      tok.text = std::string(1, c);
      advance(1);
    } else {
      throw Error(ErrorCode::kSyntaxError,
                  std::string("unexpected character '") + c + "'",
                  std::string(path), tok.span);
    }
    tok.span.line_end = line;
    tok.span.column_end = std::max(col - 1, 1);
    out.push_back(std::move(tok));
  }
  Token end;
  end.kind = Token::Kind::kEnd;
  end.span = {line, col, line, col};
  out.push_back(end);
  return out;
}

void TokenStream::fail(std::initializer_list<std::string_view> expected) const {
  std::string message = "expected ";
  if (expected.size() > 1) message += "one of ";
  bool first = true;
  for (std::string_view e : expected) {
    if (!first) message += ", ";
    message += e;
    first = false;
  }
  message += ", found " + peek().describe();
  throw Error(ErrorCode::kSyntaxError, message, path_, peek().span);
}

void TokenStream::fail_at(const Token& token, std::string message) const {
  throw Error(ErrorCode::kSyntaxError, std::move(message), path_, token.span);
}

const Token& TokenStream::expect_punct(char c) {
  if (!peek().is_punct(c)) {
    std::string label = std::string("'") + c + "'";
    fail({label});
  }
  return next();
}

const Token& TokenStream::expect_word(std::string_view w) {
  if (!peek().is_word(w)) {
    std::string label = "'" + std::string(w) + "'";
    fail({label});
  }
  return next();
}

const Token& TokenStream::expect_identifier(
    std::string_view label, const std::vector<std::string_view>& reserved) {
  const Token& t = peek();
  if (t.kind != Token::Kind::kIdentifier ||
      std::find(reserved.begin(), reserved.end(), t.text) != reserved.end()) {
    fail({label});
  }
  return next();
}

}  // namespace cgpl::detail
