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

#include "cgpl/composer.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <unistd.h>

#include "cgpl/scanner.hpp"
#include "json.hpp"

namespace cgpl {

namespace fs = std::filesystem;

namespace {

std::string node_id(const std::string& layer, const Signature& sig) {
  return layer + "/" + sig.to_string();
}

Signature child_signature(const Signature& parent,
                          const VariabilityRegion& owner,
                          const VariabilityRegion& child) {
  Signature sig = parent;
  VrName step{child.name, std::nullopt};
  int same = 0;
  for (const auto& c : owner.children) {
    if (c.name == child.name) ++same;
  }
  if (same > 1) step.qualifier = child.type_qualifier;
  sig.vr_path.push_back(std::move(step));
  return sig;
}

std::string replace_all(std::string text, std::string_view from,
                        std::string_view to) {
  std::size_t pos = 0;
  while ((pos = text.find(from, pos)) != std::string::npos) {
    text.replace(pos, from.size(), to);
    pos += to.size();
  }
  return text;
}

// Replaces every include-super line of `text` by `original`.
std::pair<std::string, int> expand_super(const std::string& text,
                                         const std::string& original,
                                         const MarkerMatcher& matcher) {
  std::string out;
  int count = 0;
  for (std::string_view line : split_lines(text)) {
    if (matcher.is_include_super(line)) {
      out += original;
      ++count;
    } else {
      out.append(line);
    }
  }
  return {std::move(out), count};
}

bool has_super(const std::string& text, const MarkerMatcher& matcher) {
  for (std::string_view line : split_lines(text)) {
    if (matcher.is_include_super(line)) return true;
  }
  return false;
}

// Composes the regions of one emitted artifact. Not shared across threads.
class ArtifactComposer {
 public:
  ArtifactComposer(const ProductLine& pl, const CompositionPlan& plan,
                   const MarkerMatcher& matcher,
                   const CompositionOptions& options)
      : pl_(pl), plan_(plan), matcher_(matcher), options_(options) {}

  ComposedRegion region(const std::string& layer, const Artifact& artifact,
                        const VariabilityRegion& vr, const Signature& sig) {
    const std::string id = node_id(layer, sig);
    if (!active_.insert(id).second) {
      throw Error(ErrorCode::kUnresolvedConflicts,
                  "refinement cycle through '" + id + "'");
    }
    ComposedRegion out;
    out.empty_block = vr.kind == VrKind::kEmptyBlock;
    out.body = out.empty_block ? vr.padding : render_body(layer, artifact, vr, sig);

    auto it = plan_.per_target.find(id);
    if (it != plan_.per_target.end()) {
      consumed.insert(id);
      for (const PlannedRefinement& step : it->second) {
        const Refinement& r = step.refinement;
        provenance.push_back({step.layer, r.refining, r.refined, r.op});
        const auto& hook = pl_.dialect.include_statement_format;
        if (hook && r.refined.whole_artifact() && r.op != RefinementOp::kReplace) {
          const VrLocation loc = locate(pl_.layers.at(step.layer), r.refining);
          std::string directive =
              replace_all(*hook, "{signature}", r.refining.to_string());
          directive = replace_all(std::move(directive), "{path}",
                                  loc.artifact->relative_path);
          directive += "\n";
          (r.op == RefinementOp::kBefore ? out.before : out.after) += directive;
          continue;
        }
        const VrLocation loc = locate(pl_.layers.at(step.layer), r.refining);
        ComposedRegion refining =
            region(step.layer, *loc.artifact, *loc.region, r.refining);
        apply(out, r.op, refining, step.layer + "/" + r.refining.to_string() +
                                       " " +
                                       std::string(refinement_op_keyword(r.op)) +
                                       " " + id);
      }
    }
    active_.erase(id);
    return out;
  }

  void apply(ComposedRegion& target, RefinementOp op,
             const ComposedRegion& refining, const std::string& what) {
    const std::string content = refining.text();
    if (op == RefinementOp::kReplace) {
      const std::string original = target.empty_block ? "" : target.body;
      auto [expanded, count] = expand_super(content, original, matcher_);
      if (count > 0 && target.empty_block) {
        warnings.push_back({Severity::kWarning, {}, {},
                            "include-super in '" + what +
                                "' refers to an empty region and expands to "
                                "nothing"});
      }
      target.body = std::move(expanded);
      target.empty_block = false;
      return;
    }
    if (has_super(content, matcher_)) {
      throw Error(ErrorCode::kDanglingSuper,
                  "include-super in '" + what +
                      "' has no original content to include (only replaces "
                      "can include the refined body)");
    }
    (op == RefinementOp::kBefore ? target.before : target.after) += content;
  }

  std::vector<ProvenanceStep> provenance;
  std::vector<Diagnostic> warnings;
  std::set<std::string> consumed;

 private:
  std::string render_body(const std::string& layer, const Artifact& artifact,
                          const VariabilityRegion& vr, const Signature& sig) {
    std::string out;
    for (const BodySegment& seg : vr.body) {
      if (const auto* text = std::get_if<std::string>(&seg)) {
        out += *text;
        continue;
      }
      const VariabilityRegion& child = vr.children[std::get<ChildRef>(seg).index];
      ComposedRegion c =
          region(layer, artifact, child, child_signature(sig, vr, child));
      const bool block = child.markers == MarkerStyle::kBlock;
      const bool keep =
          child.markers != MarkerStyle::kNone && (block || options_.keep_markers);
      if (keep) {
        out += child.open_marker.empty()
                   ? matcher_.open_marker(artifact.kind, block, child.name,
                                          child.type_qualifier) +
                         "\n"
                   : child.open_marker;
      }
      out += c.text();
      if (keep) {
        out += child.close_marker.empty()
                   ? matcher_.close_marker(artifact.kind, block, child.name) +
                         "\n"
                   : child.close_marker;
      }
    }
    return out;
  }

  const ProductLine& pl_;
  const CompositionPlan& plan_;
  const MarkerMatcher& matcher_;
  const CompositionOptions& options_;
  std::set<std::string> active_;
};

void write_text(const fs::path& path, const std::string& content) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  if (ec) throw Error(ErrorCode::kIoError, ec.message(), path.parent_path().string());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot create file", path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::kIoError, "write failed", path.string());
}

}  // namespace

CompositionPlan plan(const ProductLine& pl, const ValidationResult& result) {
  if (!result.ok()) {
    throw Error(ErrorCode::kUnresolvedConflicts,
                "the selection has " + std::to_string(result.conflicts.size()) +
                    " unresolved conflict(s)");
  }
  CompositionPlan p;
  p.closure = result.closure;
  std::map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < p.closure.size(); ++i) position[p.closure[i]] = i;

  const bool hook = pl.dialect.include_statement_format.has_value();
  std::set<ArtifactRef> fragments;
  for (const std::string& name : p.closure) {
    const Layer* layer = pl.find_layer(name);
    if (layer == nullptr) {
      throw Error(ErrorCode::kUnknownLayer, "unknown layer '" + name + "'");
    }
    for (const Refinement& r : layer->refinements) {
      p.per_target[node_id(r.refined_layer, r.refined)].push_back({name, r});
      if (hook && r.refined.whole_artifact() && r.op != RefinementOp::kReplace) {
        continue;
      }
      fragments.insert({name, locate(*layer, r.refining).artifact->relative_path});
    }
  }
  for (auto& [target, steps] : p.per_target) {
    std::stable_sort(steps.begin(), steps.end(),
                     [&](const PlannedRefinement& a, const PlannedRefinement& b) {
                       return position[a.layer] > position[b.layer];
                     });
  }

  std::map<std::string, std::string> owner;
  for (const std::string& name : p.closure) {
    for (const Artifact& a : pl.find_layer(name)->artifacts) {
      ArtifactRef ref{name, a.relative_path};
      if (fragments.count(ref)) {
        p.fragment_set.push_back(ref);
        continue;
      }
      auto [it, inserted] = owner.emplace(a.relative_path, name);
      if (!inserted) {
        throw Error(ErrorCode::kPathCollision,
                    "'" + a.relative_path + "' is emitted by both layer '" +
                        it->second + "' and layer '" + name +
                        "'; refine the whole artifact with 'replaces' instead");
      }
      p.emit_set.push_back(std::move(ref));
    }
  }
  return p;
}

ComposedRegion compose_vr(const VariabilityRegion& target,
                          const RefinementChain& chain,
                          const MarkerMatcher& matcher, ArtifactKind kind,
                          const CompositionOptions& options,
                          std::vector<Diagnostic>* warnings) {
  static const ProductLine kNoProductLine;
  static const CompositionPlan kNoPlan;
  Artifact scratch;
  scratch.kind = kind;
  ArtifactComposer composer(kNoProductLine, kNoPlan, matcher, options);
  ComposedRegion out = composer.region("", scratch, target, {});
  for (const auto& [op, refining] : chain) {
    ComposedRegion r = composer.region("", scratch, *refining, {});
    composer.apply(out, op, r, refining->name + " " +
                                   std::string(refinement_op_keyword(op)) +
                                   " " + target.name);
  }
  if (warnings != nullptr) {
    warnings->insert(warnings->end(), composer.warnings.begin(),
                     composer.warnings.end());
  }
  return out;
}

CompositionResult compose(const ProductLine& pl, const ProductConfig& config,
                          const ValidationResult& result,
                          const CompositionOptions& options) {
  for (const std::string& name : config.selected_layers) {
    if (std::find(result.closure.begin(), result.closure.end(), name) ==
        result.closure.end()) {
      throw Error(ErrorCode::kUnknownLayer,
                  "selected layer '" + name + "' is not in the validated closure");
    }
  }
  const CompositionPlan p = plan(pl, result);
  const MarkerMatcher matcher(pl.dialect);

  const std::size_t n = p.emit_set.size();
  std::vector<ComposedArtifact> artifacts(n);
  std::vector<std::vector<Diagnostic>> warnings(n);
  std::vector<std::set<std::string>> consumed(n);

  for_each_index(n, options.policy, [&](std::size_t i) {
    const ArtifactRef& ref = p.emit_set[i];
    const Artifact& artifact = *pl.layers.at(ref.layer).find_artifact(ref.relative_path);
    ArtifactComposer composer(pl, p, matcher, options);
    try {
      ComposedRegion root = composer.region(
          ref.layer, artifact, artifact.root,
          signature_of(artifact.relative_path, {}));
      artifacts[i] = {artifact.relative_path, ref.layer, root.text(),
                      std::move(composer.provenance)};
    } catch (const Error& e) {
      throw e.with_location(ref.layer + "/" + ref.relative_path, {});
    }
    warnings[i] = std::move(composer.warnings);
    if (artifact.kind != ArtifactKind::kOpaque &&
        has_super(artifacts[i].content, matcher)) {
      warnings[i].push_back({Severity::kWarning,
                             ref.layer + "/" + ref.relative_path, {},
                             "include-super outside a replacing region is left "
                             "in the output"});
    }
    consumed[i] = std::move(composer.consumed);
  });

  CompositionResult out;
  std::set<std::string> used;
  for (std::size_t i = 0; i < n; ++i) {
    out.warnings.insert(out.warnings.end(), warnings[i].begin(), warnings[i].end());
    used.insert(consumed[i].begin(), consumed[i].end());
  }
  for (const auto& [target, steps] : p.per_target) {
    if (used.count(target)) continue;
    out.warnings.push_back({Severity::kWarning, {}, {},
                            "refinement of '" + target +
                                "' does not reach any emitted artifact"});
  }
  out.artifacts = std::move(artifacts);
  std::sort(out.artifacts.begin(), out.artifacts.end(),
            [](const ComposedArtifact& a, const ComposedArtifact& b) {
              return a.relative_path < b.relative_path;
            });
  return out;
}

std::string provenance_json(const std::vector<ComposedArtifact>& artifacts) {
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const ComposedArtifact& a : artifacts) {
    nlohmann::ordered_json record;
    record["artifact"] = a.relative_path;
    std::vector<std::string> layers{a.source_layer};
    for (const auto& s : a.provenance) {
      if (std::find(layers.begin(), layers.end(), s.layer) == layers.end()) {
        layers.push_back(s.layer);
      }
    }
    record["layers"] = layers;
    nlohmann::ordered_json steps = nlohmann::ordered_json::array();
    for (const ProvenanceStep& s : a.provenance) {
      nlohmann::ordered_json step;
      step["layer"] = s.layer;
      step["refining"] = s.refining.to_string();
      step["refined"] = s.refined.to_string();
      step["op"] = std::string(refinement_op_keyword(s.op));
      steps.push_back(std::move(step));
    }
    record["steps"] = std::move(steps);
    records.push_back(std::move(record));
  }
  return records.dump(2) + "\n";
}

WriteSummary write_variant(const std::vector<ComposedArtifact>& artifacts,
                           const fs::path& output_dir) {
  std::error_code ec;
  const fs::path target = fs::absolute(output_dir, ec).lexically_normal();
  if (ec) throw Error(ErrorCode::kIoError, ec.message(), output_dir.string());
  fs::path name = target.filename();
  if (name.empty()) name = target.parent_path().filename();
  const fs::path parent = target.parent_path();

  if (fs::exists(target, ec)) {
    if (!fs::is_directory(target, ec)) {
      throw Error(ErrorCode::kIoError, "output path exists and is not a directory",
                  target.string());
    }
    if (!fs::is_empty(target, ec) &&
        !fs::exists(target / std::string(kProvenanceFile), ec)) {
      throw Error(ErrorCode::kIoError,
                  "refusing to replace a non-empty directory that does not "
                  "hold a composed variant",
                  target.string());
    }
  }

  fs::create_directories(parent, ec);
  if (ec) throw Error(ErrorCode::kIoError, ec.message(), parent.string());
  const std::string suffix = std::to_string(::getpid());
  const fs::path staging = parent / ("." + name.string() + ".cgpl-new-" + suffix);
  const fs::path retired = parent / ("." + name.string() + ".cgpl-old-" + suffix);
  fs::remove_all(staging, ec);
  fs::create_directories(staging, ec);
  if (ec) throw Error(ErrorCode::kIoError, ec.message(), staging.string());

  WriteSummary summary;
  summary.output_dir = target;
  try {
    for (const ComposedArtifact& a : artifacts) {
      write_text(staging / fs::path(a.relative_path), a.content);
      summary.files.push_back(a.relative_path);
    }
    write_text(staging / std::string(kProvenanceFile), provenance_json(artifacts));
    summary.files.emplace_back(kProvenanceFile);

    if (fs::exists(target, ec)) {
      fs::remove_all(retired, ec);
      fs::rename(target, retired, ec);
      if (ec) throw Error(ErrorCode::kIoError, ec.message(), target.string());
    }
    fs::rename(staging, target, ec);
    if (ec) throw Error(ErrorCode::kIoError, ec.message(), target.string());
  } catch (...) {
    std::error_code ignored;
    fs::remove_all(staging, ignored);
    throw;
  }
  fs::remove_all(retired, ec);
  return summary;
}

}  // namespace cgpl
