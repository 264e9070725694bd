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

#include "cgpl/ldl.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "lexer.hpp"

namespace cgpl {

namespace {

using detail::Token;
using detail::TokenStream;

const std::vector<std::string_view> kKeywords = {
    "layer", "refines", "replaces", "before", "after"};

class LdlParser {
 public:
  LdlParser(std::string_view text, std::string_view path)
      : ts_(detail::tokenize(text, path, "{},;:.#"), std::string(path)) {}

  LayerDefinitionModel parse() {
    LayerDefinitionModel model;
    std::set<std::string> seen;
    while (!ts_.at_end()) {
      if (!ts_.peek().is_word("layer")) ts_.fail({"'layer'"});
      const Token& head = ts_.peek();
      LayerEntry entry = parse_entry();
      if (!seen.insert(entry.layer).second) {
        ts_.fail_at(head, "duplicate entry for layer '" + entry.layer + "'");
      }
      model.entries.push_back(std::move(entry));
    }
    return model;
  }

 private:
  LayerEntry parse_entry() {
    LayerEntry entry;
    entry.span = ts_.expect_word("layer").span;
    entry.layer = ts_.expect_identifier("layer name", kKeywords).text;
    ts_.expect_word("refines");
    entry.refines.push_back(
        ts_.expect_identifier("refined layer name", kKeywords).text);
    while (ts_.peek().is_punct(',')) {
      ts_.next();
      entry.refines.push_back(
          ts_.expect_identifier("refined layer name", kKeywords).text);
    }
    ts_.expect_punct('{');
    while (!ts_.peek().is_punct('}')) {
      if (ts_.at_end()) ts_.fail({"signature", "'}'"});
      entry.clauses.push_back(parse_clause());
    }
    const Token& close = ts_.expect_punct('}');
    entry.span.line_end = close.span.line_end;
    entry.span.column_end = close.span.column_end;
    return entry;
  }

  Refinement parse_clause() {
    Refinement r;
    r.span = ts_.peek().span;
    r.refining = parse_signature();
    const Token& op = ts_.peek();
    if (op.is_word("replaces")) {
      r.op = RefinementOp::kReplace;
    } else if (op.is_word("before")) {
      r.op = RefinementOp::kBefore;
    } else if (op.is_word("after")) {
      r.op = RefinementOp::kAfter;
    } else {
      ts_.fail({"'replaces'", "'before'", "'after'"});
    }
    ts_.next();
    r.refined = parse_signature();
    const Token& semi = ts_.expect_punct(';');
    r.span.line_end = semi.span.line_end;
    r.span.column_end = semi.span.column_end;
    return r;
  }

  Signature parse_signature() {
    Signature sig;
    sig.artifact_path.push_back(ts_.expect_identifier("signature", kKeywords).text);
    while (ts_.peek().is_punct('.')) {
      ts_.next();
      sig.artifact_path.push_back(
          ts_.expect_identifier("artifact path segment", kKeywords).text);
    }
    if (!ts_.peek().is_punct(':')) return sig;
    ts_.next();
    sig.vr_path.push_back(parse_qualified());
    while (ts_.peek().is_punct('.')) {
      ts_.next();
      sig.vr_path.push_back(parse_qualified());
    }
    return sig;
  }

  VrName parse_qualified() {
    VrName step;
    step.name = ts_.expect_identifier("region name", kKeywords).text;
    if (ts_.peek().is_punct('#')) {
      ts_.next();
      step.qualifier = ts_.expect_identifier("type qualifier", kKeywords).text;
    }
    return step;
  }

  TokenStream ts_;
};

}  // namespace

LayerDefinitionModel parse_ldl(std::string_view text, std::string_view path) {
  return LdlParser(text, path).parse();
}

std::string render_ldl(const LayerDefinitionModel& model) {
  std::string out;
  for (std::size_t e = 0; e < model.entries.size(); ++e) {
    const LayerEntry& entry = model.entries[e];
    if (e > 0) out += "\n";
    out += "layer " + entry.layer + " refines ";
    for (std::size_t i = 0; i < entry.refines.size(); ++i) {
      if (i > 0) out += ", ";
      out += entry.refines[i];
    }
    out += " {\n";
    for (const Refinement& r : entry.clauses) {
      out += "  " + r.refining.to_string() + " " +
             std::string(refinement_op_keyword(r.op)) + " " +
             r.refined.to_string() + ";\n";
    }
    out += "}\n";
  }
  return out;
}

ProductLine bind(const ProductLine& pl, const LayerDefinitionModel& model,
                 std::vector<Diagnostic>* warnings, std::string_view ldl_path) {
  const std::string where(ldl_path);
  ProductLine out = pl;
  for (const LayerEntry& entry : model.entries) {
    auto it = out.layers.find(entry.layer);
    if (it == out.layers.end()) {
      throw Error(ErrorCode::kUnknownLayer,
                  "unknown layer '" + entry.layer + "'", where, entry.span);
    }
    for (const std::string& target : entry.refines) {
      if (target == entry.layer) {
        throw Error(ErrorCode::kSelfRefinement,
                    "layer '" + entry.layer + "' lists itself under refines",
                    where, entry.span);
      }
      if (out.layers.find(target) == out.layers.end()) {
        throw Error(ErrorCode::kUnknownLayer,
                    "unknown layer '" + target + "'", where, entry.span);
      }
    }

    const Layer& own = pl.layers.at(entry.layer);
    std::vector<Refinement> bound;
    for (const Refinement& clause : entry.clauses) {
      const std::string text = clause.refining.to_string() + " " +
                               std::string(refinement_op_keyword(clause.op)) +
                               " " + clause.refined.to_string();
      Signature refining;
      try {
        refining = canonical_signature(own, clause.refining);
      } catch (const Error& e) {
        throw e.with_location(where, clause.span, "refining side of '" + text + "'");
      }

      std::optional<Error> first_error;
      std::vector<std::string> hits;
      for (const std::string& target : entry.refines) {
        try {
          locate(pl.layers.at(target), clause.refined);
          hits.push_back(target);
        } catch (const Error& e) {
          if (!first_error) first_error = e;
        }
      }
      if (hits.empty()) {
        throw first_error->with_location(where, clause.span,
                                         "refined side of '" + text + "'");
      }
      if (hits.size() > 1 && warnings != nullptr) {
        std::string all;
        for (const auto& h : hits) all += (all.empty() ? "" : ", ") + h;
        warnings->push_back({Severity::kWarning, where, clause.span,
                             "'" + clause.refined.to_string() +
                                 "' exists in several refined layers (" + all +
                                 "); binding to '" + hits.front() + "'"});
      }
      Refinement r = clause;
      r.refining = std::move(refining);
      r.refined = canonical_signature(pl.layers.at(hits.front()), clause.refined);
      r.refined_layer = hits.front();
      bound.push_back(std::move(r));
    }
    it->second.refines = entry.refines;
    it->second.refinements = std::move(bound);
  }
  return out;
}

}  // namespace cgpl
