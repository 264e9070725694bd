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

#include "cgpl/pcl.hpp"

#include <algorithm>
#include <vector>

#include "lexer.hpp"

namespace cgpl {

namespace {

using detail::Token;

const std::vector<std::string_view> kKeywords = {
    "generator", "output", "layers"};

const Token& expect_string(detail::TokenStream& ts) {
  if (ts.peek().kind != Token::Kind::kString) ts.fail({"string"});
  return ts.next();
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

ProductConfig parse_pcl(std::string_view text, std::string_view path) {
  detail::TokenStream ts(detail::tokenize(text, path, "{}=;,"),
                         std::string(path));
  ProductConfig cfg;
  ts.expect_word("generator");
  cfg.generator_name = ts.expect_identifier("generator name", kKeywords).text;
  ts.expect_punct('{');
  if (ts.peek().is_word("output")) {
    ts.next();
    ts.expect_punct('=');
    const Token& out = expect_string(ts);
    if (out.text.empty()) ts.fail_at(out, "output folder must not be empty");
    cfg.output_dir = out.text;
    ts.expect_punct(';');
  }
  if (!ts.peek().is_word("layers")) {
    if (cfg.output_dir) {
      ts.fail({"'layers'"});
    }
    ts.fail({"'output'", "'layers'"});
  }
  const Token& layers_kw = ts.next();
  ts.expect_punct('=');
  std::vector<const Token*> items{&expect_string(ts)};
  while (ts.peek().is_punct(',')) {
    ts.next();
    items.push_back(&expect_string(ts));
  }
  ts.expect_punct(';');
  ts.expect_punct('}');
  if (!ts.at_end()) ts.fail({"end of input"});

  if (items.size() == 1 && items.front()->text.empty()) {
    throw Error(ErrorCode::kEmptySelection,
                "at least one layer must be selected", std::string(path),
                layers_kw.span);
  }
  for (const Token* item : items) {
    if (!is_identifier(item->text)) {
      ts.fail_at(*item, "'" + item->text + "' is not a valid layer name");
    }
    if (std::find(cfg.selected_layers.begin(), cfg.selected_layers.end(),
                  item->text) != cfg.selected_layers.end()) {
      ts.fail_at(*item, "layer '" + item->text + "' is selected twice");
    }
    cfg.selected_layers.push_back(item->text);
  }
  return cfg;
}

std::string render_pcl(const ProductConfig& config) {
  std::string out = "generator " + config.generator_name + " {\n";
  if (config.output_dir) out += "  output = " + quote(*config.output_dir) + ";\n";
  out += "  layers = ";
  for (std::size_t i = 0; i < config.selected_layers.size(); ++i) {
    if (i > 0) out += ", ";
    out += quote(config.selected_layers[i]);
  }
  return out + ";\n}\n";
}

}  // namespace cgpl
