#include <benchmark/benchmark.h>

#include "uavfog/lp_export.hpp"
#include "uavfog/scenarios.hpp"

using namespace uavfog;

namespace {

ProblemInstance default_instance() {
  return make_instance(config_from_json_text("{}"));
}

ProblemInstance small_instance() {
  ScenarioConfig config = config_from_json_text(R"({
    "grid": {"width": 8, "height": 8},
    "topology": {"pbs_count": 2, "mbs_count": 1,
                 "pbs_positions_m": [[50, 50], [125, 125]]},
    "dest": [8, 2]
  })");
  return make_instance(config);
}

}  // namespace

static void BM_ShortestPath16x16(benchmark::State& state) {
  Grid grid(16, 16, 25.0);
  for (auto _ : state) {
    auto path = shortest_path(grid, {1, 1}, {16, 16});
    benchmark::DoNotOptimize(path);
  }
}
BENCHMARK(BM_ShortestPath16x16);

static void BM_Solve16x16(benchmark::State& state) {
  const ProblemInstance instance = default_instance();
  for (auto _ : state) {
    Solution sol = solve(instance);
    benchmark::DoNotOptimize(sol);
  }
}
BENCHMARK(BM_Solve16x16);

static void BM_SolveAllPriorities16x16(benchmark::State& state) {
  const ProblemInstance instance = default_instance();
  for (auto _ : state) {
    auto solutions = solve_all_priorities(instance);
    benchmark::DoNotOptimize(solutions);
  }
}
BENCHMARK(BM_SolveAllPriorities16x16);

static void BM_BuildLpModel8x8(benchmark::State& state) {
  const ProblemInstance instance = small_instance();
  for (auto _ : state) {
    LpModel model = build_lp_model(instance);
    benchmark::DoNotOptimize(model);
  }
}
BENCHMARK(BM_BuildLpModel8x8);

static void BM_TestCaseTwo(benchmark::State& state) {
  const ScenarioConfig config = config_from_json_text("{}");
  for (auto _ : state) {
    CsvTable table = run_test_case_two(config);
    benchmark::DoNotOptimize(table);
  }
}
BENCHMARK(BM_TestCaseTwo);

BENCHMARK_MAIN();
