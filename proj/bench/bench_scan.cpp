#include <benchmark/benchmark.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "reprolint/checks.hpp"
#include "reprolint/config.hpp"
#include "reprolint/project.hpp"
#include "reprolint/scanner.hpp"

namespace fs = std::filesystem;
using namespace reprolint;

namespace {

// Synthetic project with `scripts` R files of roughly 200 lines each.
fs::path make_project(int scripts) {
  const fs::path root = fs::temp_directory_path() / ("reprolint-bench-" + std::to_string(scripts));
  if (fs::exists(root)) return root;
  fs::create_directories(root / "data-raw");
  std::ofstream(root / "README.md") << "# bench\n";
  std::mt19937 rng(17);
  for (int s = 0; s < scripts; ++s) {
    std::ofstream out(root / ("s" + std::to_string(s) + ".R"));
    out << "library(dplyr)\nlibrary(ggplot2)\nset.seed(" << rng() % 1000 << ")\n";
    for (int i = 0; i < 200; ++i) {
      switch (rng() % 5) {
        case 0: out << "x" << i << " <- read.csv(\"data-raw/f" << i << ".csv\")\n"; break;
        case 1: out << "y" << i << " <- rnorm(" << i + 1 << ")\n"; break;
        case 2: out << "write.csv(x, file = \"out" << s << "_" << i << ".csv\")\n"; break;
        case 3: out << "# comment with \"quotes\" and (parens)\n"; break;
        default: out << "z" << i << " = mean(c(1,2,3)) %>% round(2)\n"; break;
      }
    }
  }
  return root;
}

void BM_ScanSerial(benchmark::State& state) {
  const ProjectDir project = scan_project(make_project(static_cast<int>(state.range(0))));
  const Config config = Config::defaults();
  for (auto _ : state) benchmark::DoNotOptimize(scan_scripts_serial(project, config.functions));
}

void BM_ScanParallel(benchmark::State& state) {
  const ProjectDir project = scan_project(make_project(static_cast<int>(state.range(0))));
  const Config config = Config::defaults();
  for (auto _ : state) benchmark::DoNotOptimize(scan_scripts(project, config.functions));
}

void BM_ChecksSerial(benchmark::State& state) {
  const ProjectAnalysis analysis = analyze_project(make_project(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(run_checks_serial(analysis, CheckSelection::all()));
}

void BM_ChecksParallel(benchmark::State& state) {
  const ProjectAnalysis analysis = analyze_project(make_project(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(run_checks(analysis, CheckSelection::all()));
}

}  // namespace

BENCHMARK(BM_ScanSerial)->Arg(16)->Arg(128);
BENCHMARK(BM_ScanParallel)->Arg(16)->Arg(128);
BENCHMARK(BM_ChecksSerial)->Arg(16)->Arg(128);
BENCHMARK(BM_ChecksParallel)->Arg(16)->Arg(128);

BENCHMARK_MAIN();
