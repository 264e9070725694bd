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

// cgpl: validate, compose, graph and measure code-generator product lines.
//
// Exit status: 0 success, 1 conflicts or composition failure, 2 parse, scan
// or usage errors, 3 I/O errors.

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cgpl/composer.hpp"
#include "cgpl/ldl.hpp"
#include "cgpl/pipeline.hpp"
#include "cgpl/stats.hpp"
#include "cgpl/validator.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct Options {
  std::string root = ".";
  std::string pcl;
  bool json = false;
  bool serial = false;
  std::string output;
  bool keep_markers = false;
  bool dry_run = false;
};

bool use_color() {
  const char* env = std::getenv("CGPL_COLOR");
  if (env != nullptr && std::string(env) == "never") return false;
  return ::isatty(STDERR_FILENO) != 0;
}

// Collects diagnostics and decides the exit status from their severity.
class Reporter {
 public:
  explicit Reporter(bool json) : json_(json), color_(use_color()) {}

  void warn(const std::vector<cgpl::Diagnostic>& diagnostics) {
    for (const auto& d : diagnostics) add(d, "");
  }

  int fail(const cgpl::Error& e) {
    add(e.to_diagnostic(), cgpl::error_code_name(e.code()));
    exit_code_ = std::max(exit_code_, cgpl::exit_code_for(e.code()));
    return exit_code_;
  }

  void conflict(const std::string& message, json record) {
    exit_code_ = std::max(exit_code_, 1);
    if (!json_) print(cgpl::Severity::kError, message);
    conflicts_.push_back(std::move(record));
  }

  int exit_code() const { return exit_code_; }

  json to_json() const {
    json out;
    out["conflicts"] = conflicts_;
    out["diagnostics"] = diagnostics_;
    return out;
  }

 private:
  void add(const cgpl::Diagnostic& d, std::string_view code) {
    json j;
    j["severity"] = d.severity == cgpl::Severity::kError ? "error" : "warning";
    j["code"] = std::string(code);
    j["path"] = d.path;
    j["line"] = d.span.line_begin;
    j["column"] = d.span.column_begin;
    j["message"] = d.message;
    diagnostics_.push_back(std::move(j));
    if (!json_) print(d.severity, cgpl::format_diagnostic(d));
  }

  void print(cgpl::Severity severity, const std::string& text) {
    if (!color_) {
      std::cerr << text << "\n";
      return;
    }
    const char* tint = severity == cgpl::Severity::kError ? "\x1b[31m" : "\x1b[33m";
    std::cerr << tint << text << "\x1b[0m\n";
  }

  bool json_;
  bool color_;
  int exit_code_ = 0;
  json conflicts_ = json::array();
  json diagnostics_ = json::array();
};

void print_json(json doc, const Reporter& reporter) {
  const json extra = reporter.to_json();
  doc["exit_code"] = reporter.exit_code();
  doc["conflicts"] = extra["conflicts"];
  doc["diagnostics"] = extra["diagnostics"];
  std::cout << doc.dump(2) << "\n";
}

cgpl::ExecutionPolicy policy_of(const Options& o) {
  return o.serial ? cgpl::ExecutionPolicy::kSerial
                  : cgpl::ExecutionPolicy::kParallel;
}

cgpl::ProductConfig read_config(const Options& o) {
  const fs::path path = o.pcl.empty() ? cgpl::find_pcl(o.root) : fs::path(o.pcl);
  return cgpl::load_pcl(path);
}

// Source location of the clause behind a graph edge, for conflict reports.
std::optional<cgpl::Diagnostic> clause_location(const cgpl::ProductLine& pl,
                                                const cgpl::VrNode& from,
                                                const cgpl::VrNode& to) {
  const cgpl::Layer* layer = pl.find_layer(from.color);
  if (layer == nullptr) return std::nullopt;
  for (const cgpl::Refinement& r : layer->refinements) {
    if (r.refining == from.signature && r.refined == to.signature &&
        r.refined_layer == to.color) {
      return cgpl::Diagnostic{cgpl::Severity::kError,
                              (fs::path(pl.root_dir) /
                               std::string(cgpl::kLayerDefinitionFile))
                                  .string(),
                              r.span, "refinement declared here"};
    }
  }
  return std::nullopt;
}

void report_conflicts(const cgpl::ProductLine& pl,
                      const cgpl::RefinementGraph& graph,
                      const cgpl::ValidationResult& result, Reporter& reporter) {
  const auto& nodes = graph.nodes();
  for (const cgpl::Conflict& c : result.conflicts) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    if (c.kind == cgpl::ConflictKind::kCycle) {
      for (std::size_t i = 0; i + 1 < c.witnesses.size(); ++i) {
        edges.emplace_back(c.witnesses[i], c.witnesses[i + 1]);
      }
    } else {
      for (std::size_t i = 1; i < c.witnesses.size(); ++i) {
        edges.emplace_back(c.witnesses[i], c.witnesses.front());
      }
    }
    std::string message = cgpl::describe_conflict(graph, c);
    json record;
    record["kind"] = std::string(cgpl::conflict_kind_name(c.kind));
    json witnesses = json::array();
    for (std::size_t w : c.witnesses) witnesses.push_back(nodes[w].id());
    record["witnesses"] = witnesses;
    json locations = json::array();
    for (const auto& [from, to] : edges) {
      auto loc = clause_location(pl, nodes[from], nodes[to]);
      if (!loc) continue;
      message += "\n  " + loc->path + ":" + cgpl::to_string(loc->span) + ": " +
                 nodes[from].id() + " -> " + nodes[to].id();
      json l;
      l["path"] = loc->path;
      l["line"] = loc->span.line_begin;
      l["column"] = loc->span.column_begin;
      l["from"] = nodes[from].id();
      l["to"] = nodes[to].id();
      locations.push_back(std::move(l));
    }
    record["locations"] = locations;
    record["message"] = message;
    reporter.conflict(message, std::move(record));
  }
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

int cmd_validate(const Options& o) {
  Reporter reporter(o.json);
  json doc;
  doc["command"] = "validate";
  try {
    cgpl::LoadedProductLine loaded = cgpl::load_product_line(o.root, true, policy_of(o));
    reporter.warn(loaded.warnings);
    const cgpl::ProductConfig config = read_config(o);
    const auto graph = cgpl::build_graph(loaded.product_line, config.selected_layers);
    const auto result = cgpl::validate(graph);
    reporter.warn(result.warnings);
    report_conflicts(loaded.product_line, graph, result, reporter);
    doc["closure"] = result.closure;
    if (!o.json) {
      std::cout << result.closure.size() << " layers in closure: "
                << join(result.closure) << "\n";
      if (!result.ok()) {
        std::cout << result.conflicts.size() << " conflict(s)\n";
      }
    }
  } catch (const cgpl::Error& e) {
    reporter.fail(e);
  }
  doc["ok"] = reporter.exit_code() == 0;
  if (o.json) print_json(doc, reporter);
  return reporter.exit_code();
}

// Refuses an output directory that is, or contains, the product-line root.
void check_output(const fs::path& output, const fs::path& root) {
  const fs::path out = fs::weakly_canonical(fs::absolute(output));
  const fs::path in = fs::weakly_canonical(fs::absolute(root));
  auto o = out.begin();
  auto r = in.begin();
  for (; o != out.end() && r != in.end(); ++o, ++r) {
    if (*o != *r) return;
  }
  if (o == out.end()) {
    throw cgpl::Error(cgpl::ErrorCode::kIoError,
                      "output directory would replace the product-line root",
                      output.string());
  }
}

int cmd_compose(const Options& o) {
  Reporter reporter(o.json);
  json doc;
  doc["command"] = "compose";
  try {
    cgpl::LoadedProductLine loaded = cgpl::load_product_line(o.root, true, policy_of(o));
    reporter.warn(loaded.warnings);
    const cgpl::ProductConfig config = read_config(o);
    const cgpl::ProductLine& pl = loaded.product_line;
    const auto graph = cgpl::build_graph(pl, config.selected_layers);
    const auto result = cgpl::validate(graph);
    reporter.warn(result.warnings);
    report_conflicts(pl, graph, result, reporter);
    doc["closure"] = result.closure;
    if (!result.ok()) {
      throw cgpl::Error(cgpl::ErrorCode::kUnresolvedConflicts,
                        "composition aborted: the selection has conflicts");
    }

    // Like build tools, a configured output is relative to the working
    // directory rather than to the product-line root.
    const fs::path output =
        o.output.empty() ? fs::path(config.output_or_default()) : fs::path(o.output);
    doc["output_dir"] = output.string();
    cgpl::CompositionOptions options;
    options.keep_markers = o.keep_markers;
    options.policy = policy_of(o);

    if (o.dry_run) {
      const cgpl::CompositionPlan plan = cgpl::plan(pl, result);
      const cgpl::CompositionResult composed =
          cgpl::compose(pl, config, result, options);
      reporter.warn(composed.warnings);
      json p;
      p["generator"] = config.generator_name;
      p["output_dir"] = output.string();
      p["closure"] = plan.closure;
      auto refs = [](const std::vector<cgpl::ArtifactRef>& v) {
        json a = json::array();
        for (const auto& r : v) a.push_back({{"layer", r.layer}, {"path", r.relative_path}});
        return a;
      };
      p["emit"] = refs(plan.emit_set);
      p["fragments"] = refs(plan.fragment_set);
      p["provenance"] = json::parse(cgpl::provenance_json(composed.artifacts));
      std::cout << p.dump(2) << "\n";
      return reporter.exit_code();
    }

    check_output(output, o.root);
    const cgpl::CompositionResult composed =
        cgpl::compose(pl, config, result, options);
    reporter.warn(composed.warnings);
    const cgpl::WriteSummary summary = cgpl::write_variant(composed.artifacts, output);
    doc["files"] = summary.files;
    if (!o.json) {
      std::cout << "wrote " << composed.artifacts.size() << " file(s) to "
                << summary.output_dir.string() << "\n";
    }
  } catch (const cgpl::Error& e) {
    reporter.fail(e);
  }
  doc["ok"] = reporter.exit_code() == 0;
  if (o.json) print_json(doc, reporter);
  return reporter.exit_code();
}

int cmd_graph(const Options& o) {
  Reporter reporter(false);
  try {
    cgpl::LoadedProductLine loaded = cgpl::load_product_line(o.root, true, policy_of(o));
    reporter.warn(loaded.warnings);
    std::vector<std::string> selected;
    if (!o.pcl.empty() || !loaded.product_line.layers.empty()) {
      try {
        selected = read_config(o).selected_layers;
      } catch (const cgpl::Error& e) {
        if (e.code() != cgpl::ErrorCode::kUsage || !o.pcl.empty()) throw;
        // Without a configuration every layer is drawn.
        for (const auto& [name, layer] : loaded.product_line.layers) {
          selected.push_back(name);
        }
      }
    }
    const auto graph = cgpl::build_graph(loaded.product_line, selected);
    const auto result = cgpl::validate(graph);
    reporter.warn(result.warnings);
    report_conflicts(loaded.product_line, graph, result, reporter);
    std::cout << cgpl::export_dot(graph, result);
  } catch (const cgpl::Error& e) {
    reporter.fail(e);
  }
  return reporter.exit_code();
}

int cmd_stats(const Options& o) {
  Reporter reporter(o.json);
  try {
    cgpl::LoadedProductLine loaded = cgpl::load_product_line(o.root, false, policy_of(o));
    reporter.warn(loaded.warnings);
    const cgpl::StatsReport report = cgpl::compute_stats(loaded.product_line);
    std::cout << (o.json ? cgpl::render_stats_json(report)
                         : cgpl::render_stats_table(report));
  } catch (const cgpl::Error& e) {
    reporter.fail(e);
    if (o.json) {
      json doc;
      doc["command"] = "stats";
      doc["ok"] = false;
      print_json(doc, reporter);
    }
  }
  return reporter.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Validate and compose layered code-generator product lines."};
  app.require_subcommand(1);
  app.set_version_flag("--version", "cgpl 1.0.0");

  Options o;
  auto common = [&](CLI::App* cmd, bool needs_pcl) {
    cmd->add_option("--root", o.root, "product-line root directory")
        ->capture_default_str();
    if (needs_pcl) {
      cmd->add_option("--pcl", o.pcl,
                      "product configuration (default: the only *.pcl in root)");
    }
    cmd->add_flag("--serial", o.serial, "scan and compose on one thread");
  };

  CLI::App* validate =
      app.add_subcommand("validate", "check the refinement graph of a selection");
  common(validate, true);
  validate->add_flag("--json", o.json, "machine-readable report on stdout");

  CLI::App* compose = app.add_subcommand("compose", "write the composed variant");
  common(compose, true);
  compose->add_flag("--json", o.json, "machine-readable report on stdout");
  compose->add_option("--output", o.output,
                      "output directory (overrides the configuration)");
  compose->add_flag("--keep-markers", o.keep_markers,
                    "keep comment region markers in the output");
  compose->add_flag("--dry-run", o.dry_run,
                    "print plan and provenance as JSON, write nothing");

  CLI::App* graph = app.add_subcommand(
      "graph", "print the refinement graph in Graphviz format");
  common(graph, true);

  CLI::App* stats = app.add_subcommand(
      "stats",
      "per-layer size metrics; TLOC and HLOC count non-blank lines of "
      "template and helper files");
  common(stats, false);
  stats->add_flag("--json", o.json, "JSON instead of a table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (validate->parsed()) return cmd_validate(o);
  if (compose->parsed()) return cmd_compose(o);
  if (graph->parsed()) return cmd_graph(o);
  return cmd_stats(o);
}
