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

#include "cgpl/model.hpp"

#include <algorithm>
#include <cctype>

namespace cgpl {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

[[noreturn]] void signature_error(std::string_view text,
                                  std::string_view what) {
  throw Error(ErrorCode::kSyntaxError, "invalid signature '" +
                                           std::string(text) +
                                           "': " + std::string(what));
}

std::string qualified(const VariabilityRegion& vr) {
  std::string out = vr.name;
  if (vr.type_qualifier) out += "#" + *vr.type_qualifier;
  return out;
}

}  // namespace

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = static_cast<unsigned char>(s.front());
  if (!(std::isalpha(head) || head == '_')) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_';
  });
}

std::string Signature::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < artifact_path.size(); ++i) {
    if (i > 0) out += '.';
    out += artifact_path[i];
  }
  for (std::size_t i = 0; i < vr_path.size(); ++i) {
    out += i == 0 ? ':' : '.';
    out += vr_path[i].name;
    if (vr_path[i].qualifier) out += "#" + *vr_path[i].qualifier;
  }
  return out;
}

Signature Signature::parse(std::string_view text) {
  Signature sig;
  std::size_t colon = text.find(':');
  std::string_view artifact = text.substr(0, colon);
  for (std::string_view seg : split(artifact, '.')) {
    if (!is_identifier(seg)) signature_error(text, "bad artifact segment");
    sig.artifact_path.emplace_back(seg);
  }
  if (colon == std::string_view::npos) return sig;
  for (std::string_view seg : split(text.substr(colon + 1), '.')) {
    VrName step;
    std::size_t hash = seg.find('#');
    step.name = std::string(seg.substr(0, hash));
    if (!is_identifier(step.name)) signature_error(text, "bad region name");
    if (hash != std::string_view::npos) {
      std::string_view q = seg.substr(hash + 1);
      if (!is_identifier(q)) signature_error(text, "bad type qualifier");
      step.qualifier = std::string(q);
    }
    sig.vr_path.push_back(std::move(step));
  }
  return sig;
}

Signature signature_of(std::string_view relative_path,
                       const std::vector<VrName>& chain) {
  Signature sig;
  for (std::string_view seg : split(relative_path, '/')) {
    if (!seg.empty()) sig.artifact_path.emplace_back(seg);
  }
  if (!sig.artifact_path.empty()) {
    std::string& last = sig.artifact_path.back();
    std::size_t dot = last.rfind('.');
    if (dot != std::string::npos && dot > 0) last.erase(dot);
  }
  sig.vr_path = chain;
  return sig;
}

std::string_view vr_kind_name(VrKind kind) {
  switch (kind) {
    case VrKind::kContentBlock: return "ContentBlock";
    case VrKind::kEmptyBlock: return "EmptyBlock";
    case VrKind::kWholeArtifact: return "WholeArtifact";
  }
  return "?";
}

std::size_t VariabilityRegion::count_regions() const {
  std::size_t n = 1;
  for (const auto& c : children) n += c.count_regions();
  return n;
}

bool structurally_equal(const VariabilityRegion& a,
                        const VariabilityRegion& b) {
  if (a.name != b.name || a.type_qualifier != b.type_qualifier ||
      a.kind != b.kind || a.markers != b.markers || a.padding != b.padding ||
      a.body.size() != b.body.size() ||
      a.children.size() != b.children.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.body.size(); ++i) {
    if (a.body[i] != b.body[i]) return false;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!structurally_equal(a.children[i], b.children[i])) return false;
  }
  return true;
}

void check_region_invariants(const VariabilityRegion& vr,
                             std::string_view path) {
  if (vr.kind == VrKind::kEmptyBlock &&
      (!vr.body.empty() || !vr.children.empty())) {
    throw Error(ErrorCode::kMarkerMismatch,
                "empty region '" + vr.name + "' has content",
                std::string(path), vr.span);
  }
  std::vector<int> refs(vr.children.size(), 0);
  std::size_t last = 0;
  bool first = true;
  for (const auto& seg : vr.body) {
    if (const auto* ref = std::get_if<ChildRef>(&seg)) {
      if (ref->index >= vr.children.size() || (!first && ref->index <= last)) {
        throw Error(ErrorCode::kMarkerMismatch,
                    "region '" + vr.name + "' has out-of-order child refs",
                    std::string(path), vr.span);
      }
      ++refs[ref->index];
      last = ref->index;
      first = false;
    }
  }
  if (std::any_of(refs.begin(), refs.end(), [](int n) { return n != 1; })) {
    throw Error(ErrorCode::kMarkerMismatch,
                "region '" + vr.name + "' has unreferenced children",
                std::string(path), vr.span);
  }
  for (std::size_t i = 0; i < vr.children.size(); ++i) {
    const auto& a = vr.children[i];
    for (std::size_t j = i + 1; j < vr.children.size(); ++j) {
      const auto& b = vr.children[j];
      if (a.name != b.name) continue;
      bool distinct =
          a.type_qualifier && b.type_qualifier && *a.type_qualifier != *b.type_qualifier;
      if (!distinct) {
        throw Error(ErrorCode::kDuplicateVR,
                    "region '" + qualified(b) + "' duplicates sibling '" +
                        qualified(a) + "' at " + to_string(a.span),
                    std::string(path), b.span);
      }
    }
    check_region_invariants(a, path);
  }
}

std::vector<std::string> Artifact::signature_path() const {
  return signature_of(relative_path, {}).artifact_path;
}

std::string_view refinement_op_keyword(RefinementOp op) {
  switch (op) {
    case RefinementOp::kReplace: return "replaces";
    case RefinementOp::kBefore: return "before";
    case RefinementOp::kAfter: return "after";
  }
  return "?";
}

const Artifact* Layer::find_artifact(std::string_view relative_path) const {
  auto it = std::lower_bound(
      artifacts.begin(), artifacts.end(), relative_path,
      [](const Artifact& a, std::string_view p) { return a.relative_path < p; });
  if (it == artifacts.end() || it->relative_path != relative_path) {
    return nullptr;
  }
  return &*it;
}

const Layer* ProductLine::find_layer(std::string_view name) const {
  auto it = layers.find(std::string(name));
  return it == layers.end() ? nullptr : &it->second;
}

VrLocation locate(const Layer& layer, const Signature& sig) {
  const Artifact* artifact = nullptr;
  for (const Artifact& a : layer.artifacts) {
    if (a.signature_path() != sig.artifact_path) continue;
    if (artifact != nullptr) {
      throw Error(ErrorCode::kAmbiguousVR,
                  "artifact '" + sig.to_string() + "' matches both '" +
                      artifact->relative_path + "' and '" + a.relative_path +
                      "' in layer '" + layer.name + "'");
    }
    artifact = &a;
  }
  if (artifact == nullptr) {
    std::string path;
    for (const auto& s : sig.artifact_path) path += (path.empty() ? "" : "/") + s;
    throw Error(ErrorCode::kUnknownArtifact,
                "no artifact '" + path + "' in layer '" + layer.name + "'");
  }

  const VariabilityRegion* current = &artifact->root;
  for (std::size_t depth = 0; depth < sig.vr_path.size(); ++depth) {
    const VrName& step = sig.vr_path[depth];
    const VariabilityRegion* found = nullptr;
    int matches = 0;
    for (const auto& child : current->children) {
      if (child.name != step.name) continue;
      if (step.qualifier && child.type_qualifier != step.qualifier) continue;
      ++matches;
      found = &child;
    }
    if (matches == 0) {
      throw Error(ErrorCode::kUnknownVR,
                  "no region '" + step.name +
                      (step.qualifier ? "#" + *step.qualifier : "") + "' in '" +
                      artifact->relative_path + "' of layer '" + layer.name +
                      "' (signature " + sig.to_string() + ")");
    }
    if (matches > 1) {
      throw Error(ErrorCode::kAmbiguousVR,
                  "region '" + step.name + "' in '" + artifact->relative_path +
                      "' of layer '" + layer.name +
                      "' is ambiguous; qualify it with #Type (signature " +
                      sig.to_string() + ")");
    }
    current = found;
  }
  return VrLocation{&layer, artifact, current};
}

VrLocation locate(const ProductLine& pl, const Signature& sig,
                  std::string_view within) {
  const Layer* layer = pl.find_layer(within);
  if (layer == nullptr) {
    throw Error(ErrorCode::kUnknownLayer,
                "unknown layer '" + std::string(within) + "'");
  }
  return locate(*layer, sig);
}

const VariabilityRegion& resolve(const ProductLine& pl, const Signature& sig,
                                 std::string_view within) {
  return *locate(pl, sig, within).region;
}

Signature canonical_signature(const Layer& layer, const Signature& sig) {
  const VrLocation loc = locate(layer, sig);
  Signature out;
  out.artifact_path = sig.artifact_path;
  const VariabilityRegion* current = &loc.artifact->root;
  for (const VrName& step : sig.vr_path) {
    const VariabilityRegion* next = nullptr;
    int same_name = 0;
    for (const auto& child : current->children) {
      if (child.name != step.name) continue;
      ++same_name;
      if (!step.qualifier || child.type_qualifier == step.qualifier) next = &child;
    }
    VrName canon{next->name, std::nullopt};
    if (same_name > 1) canon.qualifier = next->type_qualifier;
    out.vr_path.push_back(std::move(canon));
    current = next;
  }
  return out;
}

}  // namespace cgpl
