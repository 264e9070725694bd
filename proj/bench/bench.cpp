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


// Serial reference against the OpenMP path for the two data-parallel stages:
// scanning layer files and composing emitted artifacts. The product line is
// synthetic: every layer holds the same templates, and each layer above the
// base replaces one block per template through a fragment file.

#include <benchmark/benchmark.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

#include "cgpl/composer.hpp"
#include "cgpl/pipeline.hpp"
#include "cgpl/scanner.hpp"
#include "cgpl/validator.hpp"

namespace {

namespace fs = std::filesystem;

constexpr int kLayers = 8;
constexpr int kTemplates = 64;
constexpr int kBlocksPerTemplate = 24;
constexpr int kLinesPerBlock = 20;

void write(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream(path, std::ios::binary) << text;
}

std::string block(const std::string& name, const std::string& tag) {
  std::string out = "[DEFINE " + name + " FOR Model]\n";
  for (int l = 0; l < kLinesPerBlock; ++l) {
    out += "  emit(" + tag + ", " + std::to_string(l) + ");\n";
  }
  return out + "[ENDDEFINE]\n\n";
}

// Builds the product line once per process.
const fs::path& product_line() {
  static const fs::path root = [] {
    const fs::path dir =
        fs::temp_directory_path() / ("cgpl-bench-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    for (int t = 0; t < kTemplates; ++t) {
      std::string text;
      for (int b = 0; b < kBlocksPerTemplate; ++b) {
        text += block("B" + std::to_string(b), "base");
      }
      write(dir / "L0" / "t" / ("T" + std::to_string(t) + ".xpt"), text);
    }
    std::string ldl;
    for (int l = 1; l < kLayers; ++l) {
      const std::string layer = "L" + std::to_string(l);
      ldl += "layer " + layer + " refines L0 {\n";
      std::string fragment;
      for (int t = 0; t < kTemplates; ++t) {
        const std::string name = "R" + std::to_string(t);
        fragment += block(name, layer);
        ldl += "  f." + layer + ":" + name + " replaces t.T" + std::to_string(t) + ":B" +
               std::to_string(l) + ";\n";
      }
      write(dir / layer / "f" / (layer + ".xpt"), fragment);
      ldl += "}\n";
    }
    write(dir / "layers.ldl", ldl);
    return dir;
  }();
  return root;
}

std::vector<std::string> all_layers() {
  std::vector<std::string> out;
  for (int l = 0; l < kLayers; ++l) out.push_back("L" + std::to_string(l));
  return out;
}

cgpl::ExecutionPolicy policy_of(const benchmark::State& state) {
  return state.range(0) == 0 ? cgpl::ExecutionPolicy::kSerial
                             : cgpl::ExecutionPolicy::kParallel;
}

void BM_Scan(benchmark::State& state) {
  const fs::path& root = product_line();
  const cgpl::DialectConfig dialect;
  for (auto _ : state) {
    auto result = cgpl::scan_product_line(root, dialect, policy_of(state));
    benchmark::DoNotOptimize(result);
  }
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}

void BM_Compose(benchmark::State& state) {
  const auto loaded = cgpl::load_product_line(product_line());
  const auto selected = all_layers();
  const auto result = cgpl::validate(cgpl::build_graph(loaded.product_line, selected));
  cgpl::ProductConfig config;
  config.selected_layers = selected;
  cgpl::CompositionOptions options;
  options.policy = policy_of(state);
  for (auto _ : state) {
    auto composed = cgpl::compose(loaded.product_line, config, result, options);
    benchmark::DoNotOptimize(composed);
  }
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}

BENCHMARK(BM_Scan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Compose)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  fs::remove_all(product_line());
  return 0;
}
