#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "uavfog/scenarios.hpp"

using namespace uavfog;

namespace {

double cell(const CsvTable& table, std::size_t row, const std::string& column) {
  for (std::size_t c = 0; c < table.header.size(); ++c)
    if (table.header[c] == column) return std::stod(table.rows[row][c]);
  throw std::runtime_error("no column " + column);
}

std::string text_cell(const CsvTable& table, std::size_t row,
                      const std::string& column) {
  for (std::size_t c = 0; c < table.header.size(); ++c)
    if (table.header[c] == column) return table.rows[row][c];
  throw std::runtime_error("no column " + column);
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(UAVFOG_CLI_PATH) + " " + args;
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::filesystem::path temp_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "uavfog_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("config json defaults, overrides and diagnostics") {
  const ScenarioConfig defaults = config_from_json_text("{}");
  CHECK(defaults.task.bitrate_mbps == 10.0);
  CHECK(defaults.grid_width == 16);
  CHECK(defaults.dest == GridPoint{16, 2});

  const ScenarioConfig custom = config_from_json_text(R"({
    "seed": 7,
    "topology": {"pbs_count": 2, "mbs_count": 0,
                 "pbs_positions_m": [[25, 25], [50, 50]],
                 "devices": {"pico_fog": {"max_servers": 3}}},
    "grid": {"width": 6, "height": 6},
    "task": {"cpu_mips": 500, "bitrate_mbps": 20},
    "weights": {"alpha": 2},
    "start": [1, 1], "dest": [6, 6],
    "offload_filter": "limited_to_pbs"
  })");
  CHECK(custom.topology.seed == 7);
  CHECK(custom.topology.pbs_count == 2);
  CHECK(custom.weights.alpha == 2.0);
  CHECK(custom.filter == OffloadFilter::limited_to_pbs);
  const ProblemInstance instance = make_instance(custom);
  CHECK(instance.topology.node("pico1").max_servers == 3);

  CHECK_THROWS_WITH_AS(config_from_json_text("{\"grdi\": {}}"),
                       doctest::Contains("unknown field '<root>.grdi'"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(config_from_json_text("{\"task\": {\"cpu_mips\": \"x\"}}"),
                       doctest::Contains("task.cpu_mips"), ConfigError);
  CHECK_THROWS_AS(config_from_json_text("{not json"), ConfigError);
  CHECK_THROWS_AS(config_from_json_text("{\"offload_filter\": \"sideways\"}"),
                  ConfigError);
  CHECK_THROWS_WITH_AS(
      config_from_json_text(R"({"topology": {"devices": {"warp_drive": {}}}})"),
      doctest::Contains("unknown device kind"), ConfigError);
}

TEST_CASE("config serialization round-trips byte for byte") {
  ScenarioConfig config = config_from_json_text("{}");
  config.topology.pbs_count = 3;
  config.weights.gamma = 5.0;
  config.topology.overrides[NodeKind::CloudServer].max_servers = 4;
  const std::string once = config_to_json_text(config);
  const std::string twice = config_to_json_text(config_from_json_text(once));
  CHECK(once == twice);
}

TEST_CASE("solution json round-trips and validates") {
  const ScenarioConfig config = config_from_json_text("{}");
  const ProblemInstance instance = make_instance(config);
  const Solution solution = solve(instance);
  REQUIRE(solution.feasible);

  const std::string text = solution_to_json_text(config, solution);
  const SolutionRecord record = solution_from_json_text(text);
  CHECK(record.solution.objective == solution.objective);
  CHECK(record.solution.assignment.offload == solution.assignment.offload);
  CHECK(record.solution.costs.uavtpc == solution.costs.uavtpc);

  const ProblemInstance rebuilt = make_instance(record.config);
  CHECK(validate_solution(rebuilt, record.solution).empty());
}

TEST_CASE("tampered solution files are caught by the validator") {
  const ScenarioConfig config = config_from_json_text("{}");
  const Solution solution = solve(make_instance(config));
  nlohmann::json j = nlohmann::json::parse(solution_to_json_text(config, solution));

  // Teleport the second waypoint of the return leg.
  auto& path = j["solution"]["path_f_d"];
  REQUIRE(path.size() >= 2);
  path[1][0] = path[0][0].get<int>() + 5;
  const SolutionRecord record = solution_from_json_text(j.dump());
  const ProblemInstance rebuilt = make_instance(record.config);
  const auto violations = validate_solution(rebuilt, record.solution);
  bool adjacency = false;
  for (const auto& v : violations)
    adjacency |= v.find("adjacency") != std::string::npos ||
                 v.find("endpoints") != std::string::npos;
  CHECK(adjacency);
}

TEST_CASE("test case one tables satisfy the priority projections") {
  const ScenarioConfig config = config_from_json_text("{}");
  const TestCaseOneResult result = run_test_case_one(config);
  const CsvTable& table = result.priorities;

  REQUIRE(table.rows.size() == 40);  // 10 fractions x 4 priorities
  CHECK(table.header[3] == "eenpc_w");
  CHECK(table.header[4] == "ppc_w");
  CHECK(table.header[5] == "uavtfd_m");
  CHECK(table.header[6] == "uavtpc_j");

  for (std::size_t base = 0; base < table.rows.size(); base += 4) {
    std::map<std::string, std::size_t> by_priority;
    for (std::size_t k = 0; k < 4; ++k)
      by_priority[text_cell(table, base + k, "priority")] = base + k;
    REQUIRE(by_priority.size() == 4);

    for (std::size_t k = 0; k < 4; ++k) {
      CHECK(text_cell(table, base + k, "status") == "ok");
      CHECK(cell(table, by_priority["eenpc"], "eenpc_w") <=
            cell(table, base + k, "eenpc_w"));
      CHECK(cell(table, by_priority["ppc"], "ppc_w") <=
            cell(table, base + k, "ppc_w"));
      CHECK(cell(table, by_priority["uavtfd"], "uavtfd_m") <=
            cell(table, base + k, "uavtfd_m"));
      CHECK(cell(table, by_priority["uavtpc"], "uavtpc_j") <=
            cell(table, base + k, "uavtpc_j"));
    }

    // Network-first placement lands on a pico fog at every workload.
    CHECK(text_cell(table, by_priority["eenpc"], "site").rfind("pico", 0) == 0);
  }

  // Exactly one pico server is active when the demand equals its capacity.
  ScenarioConfig full_load = config;
  full_load.task.cpu_mips = 10768.0;
  full_load.weights = priority_weights(Priority::NetworkPower, 1e6);
  const Solution at_capacity = solve(make_instance(full_load));
  REQUIRE(at_capacity.feasible);
  CHECK(at_capacity.assignment.servers_active == 1);

  // Gain sweep: flight distance never grows with the MBS gain.
  const CsvTable& gains = result.gain_sweep;
  REQUIRE(gains.rows.size() == 30);
  for (std::size_t row = 0; row < gains.rows.size(); ++row) {
    CHECK(text_cell(gains, row, "status") == "ok");
    const double tfd = cell(gains, row, "uavtfd_m");
    const double fraction = cell(gains, row, "cpu_fraction");
    for (std::size_t other = row + 1; other < gains.rows.size(); ++other) {
      if (cell(gains, other, "cpu_fraction") != fraction) continue;
      if (cell(gains, other, "mbs_gain") > cell(gains, row, "mbs_gain"))
        CHECK(cell(gains, other, "uavtfd_m") <= tfd + 1e-9);
    }
    // Breakdown adds up to the total.
    CHECK(cell(gains, row, "transmit_j") + cell(gains, row, "flight_j") ==
          doctest::Approx(cell(gains, row, "uavtpc_j")).epsilon(1e-9));
  }
}

TEST_CASE("test case two reproduces the offload trade-off") {
  const ScenarioConfig config = config_from_json_text("{}");
  const CsvTable table = run_test_case_two(config);
  REQUIRE(table.rows.size() == 10);

  double prev_saving = std::numeric_limits<double>::infinity();
  for (std::size_t row = 0; row < table.rows.size(); ++row) {
    REQUIRE(text_cell(table, row, "status") == "ok");
    const double full = cell(table, row, "uavtpc_full_j");
    const double limited = cell(table, row, "uavtpc_limited_j");
    const double saving = cell(table, row, "saving_pct");
    CHECK(full <= limited);
    CHECK(saving > 0.0);
    CHECK(saving <= prev_saving + 1e-9);
    prev_saving = saving;
    CHECK(std::isfinite(cell(table, row, "transmit_full_j")));
    CHECK(std::isfinite(cell(table, row, "flight_limited_j")));
  }
  // Worst propulsion: offloading via the macro cell wins by a wide margin.
  CHECK(text_cell(table, 0, "full_access_point") == "mbs1");
  CHECK(cell(table, 0, "saving_pct") > 20.0);
}

TEST_CASE("watts convention swaps the power reading consistently") {
  ScenarioConfig config = config_from_json_text(R"({"uavtpc_convention": "watts"})");
  CHECK(config.convention == TpcConvention::watts);
  const Solution sol = solve(make_instance(config));
  REQUIRE(sol.feasible);
  CHECK(sol.costs.uavtpc ==
        sol.uav_detail.transmit_w + sol.uav_detail.flight_avg_w);
  // Journey-average flight draw equals the cruise figure when airborne.
  CHECK(sol.uav_detail.flight_avg_w ==
        doctest::Approx(config.uav.energy_per_meter_j() *
                        config.uav.cruise_speed_mps()));

  const CsvTable table = run_test_case_two(config);
  CHECK(table.header[1] == "uavtpc_full_w");
  for (std::size_t row = 0; row < table.rows.size(); ++row)
    CHECK(text_cell(table, row, "status") == "ok");
}

TEST_CASE("full idle attribution solves cleanly and charges more per node") {
  ScenarioConfig full = config_from_json_text(R"({"ipr_policy": "full"})");
  CHECK(full.ipr == IprPolicy::full);
  const ProblemInstance instance = make_instance(full);
  const Solution sol = solve(instance);
  REQUIRE(sol.feasible);
  CHECK(validate_solution(instance, sol).empty());
  // On the identical assignment the full policy strictly dominates.
  CHECK(network_power(instance.topology, sol.assignment, IprPolicy::full).total_w >
        network_power(instance.topology, sol.assignment, IprPolicy::proportional)
            .total_w);
}

TEST_CASE("sweeps are deterministic and validated") {
  const ScenarioConfig config = config_from_json_text("{}");
  CHECK(run_test_case_two(config).to_string() ==
        run_test_case_two(config).to_string());

  SweepSpec spec;
  spec.base = config;
  spec.parameter = SweepParameter::upe;
  spec.values = {0.05};  // below the declared range
  CHECK_THROWS_AS(run_sweep(spec), ConfigError);
  spec.values = {0.5, std::numeric_limits<double>::infinity()};
  CHECK_THROWS_AS(run_sweep(spec), ConfigError);
  spec.values.clear();
  CHECK_THROWS_AS(run_sweep(spec), ConfigError);
}

TEST_CASE("offload option sweep keeps the full choice ahead") {
  ScenarioConfig config = config_from_json_text("{}");
  config.weights = priority_weights(Priority::UavTotalPower, 1e6);
  SweepSpec spec;
  spec.base = config;
  spec.parameter = SweepParameter::offload_option;
  const CsvTable table = run_sweep(spec);
  REQUIRE(table.rows.size() == 2);
  CHECK(text_cell(table, 0, "offload_option") == "full");
  CHECK(cell(table, 0, "objective") <= cell(table, 1, "objective"));
}

TEST_CASE("CLI: solve, formats and exit codes") {
  const auto dir = temp_dir();

  SUBCASE("defaults solve to exit 0 and a parseable record") {
    const auto out = dir / "sol.json";
    REQUIRE(run_cli("solve --out " + out.string() + " >/dev/null 2>&1") == 0);
    const SolutionRecord record = solution_from_json_text(slurp(out));
    CHECK(record.solution.feasible);
  }

  SUBCASE("all-zero weights are accepted") {
    const auto cfg = dir / "zero.json";
    std::ofstream(cfg) << R"({"weights": {"alpha":0,"beta":0,"gamma":0,"omega":0}})";
    const auto out = dir / "zero_sol.json";
    REQUIRE(run_cli("solve -c " + cfg.string() + " --out " + out.string() +
                    " >/dev/null 2>&1") == 0);
    const SolutionRecord record = solution_from_json_text(slurp(out));
    CHECK(record.solution.feasible);
    CHECK(record.solution.objective == 0.0);
  }

  SUBCASE("malformed config exits with the usage code") {
    const auto cfg = dir / "bad.json";
    std::ofstream(cfg) << "{\"task\": {\"cpu_mips\": }";
    CHECK(run_cli("solve -c " + cfg.string() + " >/dev/null 2>&1") == 2);
    const auto cfg2 = dir / "bad2.json";
    std::ofstream(cfg2) << "{\"task\": {\"cpu_mipz\": 5}}";
    CHECK(run_cli("solve -c " + cfg2.string() + " >/dev/null 2>&1") == 2);
  }

  SUBCASE("infeasible instances exit with the infeasibility code") {
    const auto cfg = dir / "infeasible.json";
    std::ofstream(cfg) << R"({
      "topology": {"pbs_count": 1, "mbs_count": 0,
                   "pbs_positions_m": [[9000, 9000]]}
    })";
    CHECK(run_cli("solve -c " + cfg.string() + " >/dev/null 2>&1") == 3);
  }

  SUBCASE("csv format emits a single data row") {
    const auto out = dir / "sol.csv";
    REQUIRE(run_cli("solve --format csv --out " + out.string() +
                    " >/dev/null 2>&1") == 0);
    const std::string text = slurp(out);
    CHECK(text.find("feasible,objective,eenpc_w") == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);
  }
}

TEST_CASE("CLI: validate catches tampering") {
  const auto dir = temp_dir();
  const auto out = dir / "good.json";
  REQUIRE(run_cli("solve --out " + out.string() + " >/dev/null 2>&1") == 0);
  CHECK(run_cli("validate --solution " + out.string() + " >/dev/null 2>&1") == 0);

  nlohmann::json j = nlohmann::json::parse(slurp(out));
  auto& path = j["solution"]["path_f_d"];
  REQUIRE(path.size() >= 2);
  path[1][0] = path[0][0].get<int>() + 4;
  const auto bad = dir / "tampered.json";
  std::ofstream(bad) << j.dump(2);
  const auto log = dir / "validate.log";
  CHECK(run_cli("validate --solution " + bad.string() + " 2> " + log.string() +
                " >/dev/null") == 4);
  CHECK(slurp(log).find("adjacency") != std::string::npos);
}

TEST_CASE("CLI: sweep reruns are byte-identical") {
  const auto dir = temp_dir();
  const auto a = dir / "sweep_a.csv";
  const auto b = dir / "sweep_b.csv";
  REQUIRE(run_cli("sweep --param priority --out " + a.string() +
                  " >/dev/null 2>&1") == 0);
  REQUIRE(run_cli("sweep --param priority --out " + b.string() +
                  " >/dev/null 2>&1") == 0);
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("CLI: trajectory dump emits plottable waypoints") {
  const auto dir = temp_dir();
  const auto traj = dir / "trajectory.csv";
  REQUIRE(run_cli("solve --trajectory " + traj.string() + " >/dev/null 2>&1") == 0);
  const std::string text = slurp(traj);
  CHECK(text.rfind("step,x_m,y_m\n0,0,0\n", 0) == 0);  // starts at (1,1) = origin
  CHECK(std::count(text.begin(), text.end(), '\n') >= 16);
}

TEST_CASE("CLI: UAVFOG_OUT_DIR sets the default sweep directory") {
  const auto dir = temp_dir() / "envout";
  std::filesystem::remove_all(dir);
  const std::string cmd = "UAVFOG_OUT_DIR=" + dir.string() + " " +
                          std::string(UAVFOG_CLI_PATH) +
                          " sweep --test-case 2 >/dev/null 2>&1";
  REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  CHECK(std::filesystem::exists(dir / "testcase2_upe.csv"));
}

TEST_CASE("CLI: the seed flag changes the drawn PUEs") {
  const auto dir = temp_dir();
  const auto a = dir / "seed1.txt";
  const auto b = dir / "seed2.txt";
  REQUIRE(run_cli("describe-topology --seed 1 > " + a.string() + " 2>/dev/null") == 0);
  REQUIRE(run_cli("describe-topology --seed 2 > " + b.string() + " 2>/dev/null") == 0);
  CHECK(slurp(a) != slurp(b));
  const auto a2 = dir / "seed1_again.txt";
  REQUIRE(run_cli("describe-topology --seed 1 > " + a2.string() + " 2>/dev/null") == 0);
  CHECK(slurp(a) == slurp(a2));
}

TEST_CASE("CLI: describe-topology and export-lp run clean") {
  const auto dir = temp_dir();
  const auto cfg = dir / "small.json";
  std::ofstream(cfg) << R"({
    "grid": {"width": 4, "height": 4},
    "topology": {"pbs_count": 1, "mbs_count": 1,
                 "pbs_positions_m": [[25, 25]]},
    "dest": [4, 2]
  })";
  const auto lp = dir / "model.lp";
  CHECK(run_cli("export-lp -c " + cfg.string() + " --out " + lp.string() +
                " >/dev/null 2>&1") == 0);
  CHECK(slurp(lp).find("c13_single_offload") != std::string::npos);
  CHECK(run_cli("describe-topology -c " + cfg.string() + " >/dev/null 2>&1") == 0);
}
