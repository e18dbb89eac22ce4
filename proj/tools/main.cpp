// Command-line front end: solve single instances, run the workload /
// gain / propulsion sweeps, export the MILP, dump topologies, and
// re-validate saved solutions.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "uavfog/lp_export.hpp"
#include "uavfog/scenarios.hpp"
#include "uavfog/serialize.hpp"
#include "uavfog/version.hpp"

namespace {

// Exit codes: 0 solved/valid, 2 bad usage or config, 3 infeasible instance,
// 4 validation failure.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitInvalid = 4;

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "json-text";
  std::string trajectory_out;
};

uavfog::ScenarioConfig load_config(const CommonOptions& options) {
  uavfog::ScenarioConfig config;
  if (!options.config_path.empty())
    config = uavfog::load_config_file(options.config_path);
  if (options.seed) config.topology.seed = *options.seed;
  return config;
}

std::filesystem::path default_out_dir() {
  if (const char* env = std::getenv("UAVFOG_OUT_DIR")) return env;
  return ".";
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string solution_csv(const uavfog::ScenarioConfig& config,
                         const uavfog::Solution& s) {
  using uavfog::TpcConvention;
  const char* unit = config.convention == TpcConvention::joules ? "j" : "w";
  uavfog::CsvTable table;
  table.header = {"feasible",
                  "objective",
                  "eenpc_w",
                  "ppc_w",
                  "uavtfd_m",
                  std::string("uavtpc_") + unit,
                  "offload_col",
                  "offload_row",
                  "access_point",
                  "site",
                  "servers_active"};
  auto num = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return std::string(buf);
  };
  if (!s.feasible) {
    table.rows.push_back({"0", "", "", "", "", "", "", "", "", "", ""});
  } else {
    table.rows.push_back({"1", num(s.objective), num(s.costs.eenpc_w),
                          num(s.costs.ppc_w), num(s.costs.uavtfd_m),
                          num(s.costs.uavtpc),
                          std::to_string(s.assignment.offload.col),
                          std::to_string(s.assignment.offload.row),
                          s.assignment.access_point, s.assignment.site,
                          std::to_string(s.assignment.servers_active)});
  }
  return table.to_string();
}

int cmd_solve(const CommonOptions& options) {
  const uavfog::ScenarioConfig config = load_config(options);
  const uavfog::Solution solution = uavfog::solve(uavfog::make_instance(config));

  const std::string text = options.format == "csv"
                               ? solution_csv(config, solution)
                               : uavfog::solution_to_json_text(config, solution);
  if (options.out.empty()) {
    std::cout << text;
  } else {
    write_file(options.out, text);
  }
  if (!solution.feasible) {
    std::cerr << "infeasible: " << solution.infeasible_reason << "\n";
    return kExitInfeasible;
  }
  if (!options.trajectory_out.empty()) {
    const uavfog::Grid grid(config.grid_width, config.grid_height,
                            config.grid_spacing_m);
    write_file(options.trajectory_out,
               uavfog::trajectory_csv(grid, solution.path_s_f, solution.path_f_d));
  }
  return kExitOk;
}

int cmd_sweep(const CommonOptions& options, int test_case,
              const std::string& parameter, std::vector<double> values) {
  const uavfog::ScenarioConfig config = load_config(options);

  if (test_case == 1) {
    const uavfog::TestCaseOneResult result = uavfog::run_test_case_one(config);
    const auto dir = options.out.empty() ? default_out_dir()
                                         : std::filesystem::path(options.out);
    std::filesystem::create_directories(dir);
    write_file(dir / "testcase1_priorities.csv", result.priorities.to_string());
    write_file(dir / "testcase1_gains.csv", result.gain_sweep.to_string());
    std::cout << "wrote " << (dir / "testcase1_priorities.csv").string() << " and "
              << (dir / "testcase1_gains.csv").string() << "\n";
    return kExitOk;
  }
  if (test_case == 2) {
    const uavfog::CsvTable table = uavfog::run_test_case_two(config);
    const auto dir = options.out.empty() ? default_out_dir()
                                         : std::filesystem::path(options.out);
    std::filesystem::create_directories(dir);
    write_file(dir / "testcase2_upe.csv", table.to_string());
    std::cout << "wrote " << (dir / "testcase2_upe.csv").string() << "\n";
    return kExitOk;
  }

  uavfog::SweepSpec spec;
  spec.base = config;
  spec.parameter = uavfog::sweep_parameter_from(parameter);
  spec.values = values.empty() ? uavfog::SweepSpec::default_values(spec.parameter)
                               : std::move(values);
  const uavfog::CsvTable table = uavfog::run_sweep(spec);
  if (options.out.empty()) {
    std::cout << table.to_string();
  } else {
    write_file(options.out, table.to_string());
  }
  return kExitOk;
}

int cmd_export_lp(const CommonOptions& options) {
  const uavfog::ScenarioConfig config = load_config(options);
  const uavfog::LpModel model =
      uavfog::build_lp_model(uavfog::make_instance(config));
  const std::string text = uavfog::write_lp(model);
  if (options.out.empty()) {
    std::cout << text;
  } else {
    write_file(options.out, text);
  }
  return kExitOk;
}

int cmd_describe(const CommonOptions& options) {
  const uavfog::ScenarioConfig config = load_config(options);
  const uavfog::ProblemInstance instance = uavfog::make_instance(config);
  std::cout << uavfog::describe(instance.topology);
  std::cout << "grid: " << instance.grid.width() << "x" << instance.grid.height()
            << " spacing_m " << instance.grid.spacing_m() << "\n";
  for (const std::string& w : instance.cover.warnings)
    std::cout << "warning: " << w << "\n";
  return kExitOk;
}

int cmd_validate(const std::string& solution_path) {
  std::ifstream in(solution_path);
  if (!in) throw uavfog::ConfigError("cannot open solution file: " + solution_path);
  std::ostringstream text;
  text << in.rdbuf();

  const uavfog::SolutionRecord record =
      uavfog::solution_from_json_text(text.str());
  if (!record.solution.feasible) {
    std::cout << "record is an infeasibility report: "
              << record.solution.infeasible_reason << "\n";
    return kExitOk;
  }
  const uavfog::ProblemInstance instance = uavfog::make_instance(record.config);
  const std::vector<std::string> violations =
      uavfog::validate_solution(instance, record.solution);
  if (violations.empty()) {
    std::cout << "solution is valid\n";
    return kExitOk;
  }
  for (const std::string& v : violations) std::cerr << "violation: " << v << "\n";
  return kExitInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"UAV offloading and trajectory optimizer over a cloud-fog network"};
  app.set_version_flag("--version", std::string("uavfog ") + uavfog::kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  CommonOptions options;
  app.add_option("-c,--config", options.config_path, "JSON config file");
  app.add_option("--seed", options.seed, "override the topology RNG seed");
  app.add_option("-o,--out", options.out, "output file (or directory for test cases)");
  app.add_option("--format", options.format, "solve output format")
      ->check(CLI::IsMember({"json-text", "csv"}));

  auto* solve_cmd = app.add_subcommand("solve", "optimize one instance");
  solve_cmd->add_option("--trajectory", options.trajectory_out,
                        "also dump the flown trajectory as step,x_m,y_m CSV");

  int test_case = 0;
  std::string parameter = "cpu_fraction";
  std::vector<double> values;
  auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep to CSV");
  sweep_cmd->add_option("--test-case", test_case, "run a full test case (1 or 2)")
      ->check(CLI::IsMember({1, 2}));
  sweep_cmd->add_option("--param", parameter,
                        "swept parameter: cpu_fraction, mbs_gain, upe, priority, "
                        "offload_option");
  sweep_cmd->add_option("--values", values, "swept values (defaults per parameter)");

  auto* export_cmd = app.add_subcommand("export-lp", "write the MILP in LP format");
  auto* describe_cmd =
      app.add_subcommand("describe-topology", "dump the resolved topology");

  std::string solution_path;
  auto* validate_cmd =
      app.add_subcommand("validate", "re-check a saved solution file");
  validate_cmd->add_option("--solution", solution_path, "solution JSON file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(options);
    if (sweep_cmd->parsed()) return cmd_sweep(options, test_case, parameter, values);
    if (export_cmd->parsed()) return cmd_export_lp(options);
    if (describe_cmd->parsed()) return cmd_describe(options);
    if (validate_cmd->parsed()) return cmd_validate(solution_path);
  } catch (const uavfog::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
