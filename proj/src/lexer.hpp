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

// Tokenizer shared by the layer-definition and product-configuration
// languages. Internal to the library.

#ifndef CGPL_SRC_LEXER_HPP
#define CGPL_SRC_LEXER_HPP

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "cgpl/error.hpp"

namespace cgpl::detail {

struct Token {
  enum class Kind { kIdentifier, kString, kPunct, kEnd };

  Kind kind = Kind::kEnd;
  std::string text;  // identifier, unescaped string, or the punctuation char
  SourceSpan span;

  bool is_punct(char c) const {
    return kind == Kind::kPunct && text.size() == 1 && text[0] == c;
  }
  bool is_word(std::string_view w) const {
    return kind == Kind::kIdentifier && text == w;
  }
  std::string describe() const;
};

// `//` comments run to the end of the line. Strings are double quoted with
// `\"` and `\\` escapes.
std::vector<Token> tokenize(std::string_view text, std::string_view path,
                            std::string_view punctuation);

// Cursor with error reporting in terms of expected-token sets.
class TokenStream {
 public:
  TokenStream(std::vector<Token> tokens, std::string path)
      : tokens_(std::move(tokens)), path_(std::move(path)) {}

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  bool at_end() const { return peek().kind == Token::Kind::kEnd; }

  [[noreturn]] void fail(std::initializer_list<std::string_view> expected) const;
  [[noreturn]] void fail_at(const Token& token, std::string message) const;

  const Token& expect_punct(char c);
  const Token& expect_word(std::string_view w);
  // An identifier that is not one of `reserved`.
  const Token& expect_identifier(std::string_view label,
                                 const std::vector<std::string_view>& reserved);
  const std::string& path() const { return path_; }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::string path_;
};

}  // namespace cgpl::detail

#endif  // CGPL_SRC_LEXER_HPP
