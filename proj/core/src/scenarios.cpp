#include "uavfog/scenarios.hpp"

#include <cmath>
#include <cstdio>

namespace uavfog {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return std::string(buf);
}

double pico_capacity_mips(const ScenarioConfig& config) {
  auto it = config.topology.overrides.find(NodeKind::PicoFogServer);
  if (it != config.topology.overrides.end() && it->second.capacity)
    return *it->second.capacity;
  return catalog_default(NodeKind::PicoFogServer).capacity;
}

const char* tpc_unit(const ScenarioConfig& config) {
  return config.convention == TpcConvention::joules ? "j" : "w";
}

struct CellResult {
  Solution solution;
  std::string status = "ok";
  bool ok = false;
};

CellResult solve_cell(const ScenarioConfig& config) {
  CellResult out;
  try {
    out.solution = solve(make_instance(config));
    if (out.solution.feasible) {
      out.ok = true;
    } else {
      out.status = "error: " + out.solution.infeasible_reason;
    }
  } catch (const std::exception& e) {
    out.status = std::string("error: ") + e.what();
  }
  // Status lands in a CSV cell; keep it delimiter-free.
  for (char& c : out.status)
    if (c == ',' || c == '\n') c = ';';
  return out;
}

// Radio and flight parts under the configured convention.
std::pair<double, double> tpc_breakdown(const ScenarioConfig& config,
                                        const Solution& solution) {
  if (config.convention == TpcConvention::joules)
    return {solution.uav_detail.transmit_j, solution.uav_detail.flight_j};
  return {solution.uav_detail.transmit_w, solution.uav_detail.flight_avg_w};
}

}  // namespace

const char* to_string(SweepParameter parameter) {
  switch (parameter) {
    case SweepParameter::cpu_fraction: return "cpu_fraction";
    case SweepParameter::mbs_gain: return "mbs_gain";
    case SweepParameter::upe: return "upe";
    case SweepParameter::priority: return "priority";
    case SweepParameter::offload_option: return "offload_option";
  }
  return "?";
}

SweepParameter sweep_parameter_from(const std::string& name) {
  for (SweepParameter p :
       {SweepParameter::cpu_fraction, SweepParameter::mbs_gain, SweepParameter::upe,
        SweepParameter::priority, SweepParameter::offload_option})
    if (name == to_string(p)) return p;
  throw ConfigError("unknown sweep parameter '" + name + "'");
}

std::vector<double> SweepSpec::default_values(SweepParameter parameter) {
  switch (parameter) {
    case SweepParameter::cpu_fraction:
    case SweepParameter::upe:
      return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    case SweepParameter::mbs_gain:
      return {100.0, 150.0, 200.0};
    default:
      return {};
  }
}

void SweepSpec::validate() const {
  double lo = 0.0, hi = 0.0;
  switch (parameter) {
    case SweepParameter::cpu_fraction:
    case SweepParameter::upe:
      lo = 0.1;
      hi = 1.0;
      break;
    case SweepParameter::mbs_gain:
      lo = 100.0;
      hi = 200.0;
      break;
    case SweepParameter::priority:
    case SweepParameter::offload_option:
      return;  // value-free sweeps
  }
  if (values.empty())
    throw ConfigError(std::string("sweep over ") + to_string(parameter) +
                      " needs at least one value");
  for (double v : values) {
    if (!std::isfinite(v) || v < lo || v > hi)
      throw ConfigError(std::string("sweep value ") + num(v) + " for " +
                        to_string(parameter) + " is outside [" + num(lo) + ", " +
                        num(hi) + "]");
  }
}

std::string CsvTable::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ",";
    out += header[i];
  }
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += row[i];
    }
    out += "\n";
  }
  return out;
}

namespace {

// One row per (workload, priority) pair.
CsvTable cpu_fraction_table(const ScenarioConfig& base,
                            const std::vector<double>& fractions) {
  const std::string tpc = std::string("uavtpc_") + tpc_unit(base);
  CsvTable table;
  table.header = {"cpu_fraction", "cpu_mips",    "priority",
                  "eenpc_w",      "ppc_w",       "uavtfd_m",
                  tpc,            "offload_col", "offload_row",
                  "access_point", "site",        "status"};
  const double pico_mips = pico_capacity_mips(base);
  for (double fraction : fractions) {
    for (Priority priority : all_priorities()) {
      ScenarioConfig config = base;
      config.task.cpu_mips = fraction * pico_mips;
      config.weights = priority_weights(priority, base.priority_weight);
      const CellResult cell = solve_cell(config);
      if (cell.ok) {
        const Solution& s = cell.solution;
        table.rows.push_back({num(fraction), num(config.task.cpu_mips),
                              to_string(priority), num(s.costs.eenpc_w),
                              num(s.costs.ppc_w), num(s.costs.uavtfd_m),
                              num(s.costs.uavtpc), num(s.assignment.offload.col),
                              num(s.assignment.offload.row),
                              s.assignment.access_point, s.assignment.site,
                              cell.status});
      } else {
        table.rows.push_back({num(fraction), num(config.task.cpu_mips),
                              to_string(priority), "", "", "", "", "", "", "", "",
                              cell.status});
      }
    }
  }
  return table;
}

// One row per (gain, workload) while minimizing the UAV's total power. An
// empty fraction list keeps the base task untouched.
CsvTable gain_table(const ScenarioConfig& base, const std::vector<double>& gains,
                    const std::vector<double>& fractions) {
  const std::string unit = tpc_unit(base);
  CsvTable table;
  table.header = {"mbs_gain",           "cpu_fraction",
                  "cpu_mips",           "uavtfd_m",
                  "uavtpc_" + unit,     "transmit_" + unit,
                  "flight_" + unit,     "offload_col",
                  "offload_row",        "access_point",
                  "site",               "status"};
  const double pico_mips = pico_capacity_mips(base);
  std::vector<double> effective = fractions;
  if (effective.empty()) effective.push_back(base.task.cpu_mips / pico_mips);
  for (double gain : gains) {
    for (double fraction : effective) {
      ScenarioConfig config = base;
      config.uav.mbs_gain = gain;
      config.task.cpu_mips = fraction * pico_mips;
      config.weights = priority_weights(Priority::UavTotalPower, base.priority_weight);
      const CellResult cell = solve_cell(config);
      if (cell.ok) {
        const Solution& s = cell.solution;
        const auto [transmit, flight] = tpc_breakdown(config, s);
        table.rows.push_back({num(gain), num(fraction), num(config.task.cpu_mips),
                              num(s.costs.uavtfd_m), num(s.costs.uavtpc),
                              num(transmit), num(flight),
                              num(s.assignment.offload.col),
                              num(s.assignment.offload.row),
                              s.assignment.access_point, s.assignment.site,
                              cell.status});
      } else {
        table.rows.push_back({num(gain), num(fraction), num(config.task.cpu_mips),
                              "", "", "", "", "", "", "", "", cell.status});
      }
    }
  }
  return table;
}

// One row per propulsion efficiency: free offload choice vs PBS-only.
CsvTable upe_table(const ScenarioConfig& base, const std::vector<double>& upes) {
  const std::string unit = tpc_unit(base);
  CsvTable table;
  table.header = {"upe",
                  "uavtpc_full_" + unit,
                  "transmit_full_" + unit,
                  "flight_full_" + unit,
                  "full_access_point",
                  "uavtpc_limited_" + unit,
                  "transmit_limited_" + unit,
                  "flight_limited_" + unit,
                  "saving_pct",
                  "status"};
  for (double upe : upes) {
    ScenarioConfig full = base;
    full.uav.upe = upe;
    full.filter = OffloadFilter::full;
    ScenarioConfig limited = full;
    limited.filter = OffloadFilter::limited_to_pbs;

    const CellResult a = solve_cell(full);
    const CellResult b = solve_cell(limited);
    if (a.ok && b.ok) {
      const auto [ta, fa] = tpc_breakdown(full, a.solution);
      const auto [tb, fb] = tpc_breakdown(limited, b.solution);
      const double tpc_full = a.solution.costs.uavtpc;
      const double tpc_limited = b.solution.costs.uavtpc;
      const double saving =
          tpc_limited > 0.0 ? 100.0 * (tpc_limited - tpc_full) / tpc_limited : 0.0;
      table.rows.push_back({num(upe), num(tpc_full), num(ta), num(fa),
                            a.solution.assignment.access_point, num(tpc_limited),
                            num(tb), num(fb), num(saving), "ok"});
    } else {
      table.rows.push_back({num(upe), "", "", "", "", "", "", "", "",
                            a.ok ? b.status : a.status});
    }
  }
  return table;
}

CsvTable priority_table(const ScenarioConfig& base) {
  const std::string tpc = std::string("uavtpc_") + tpc_unit(base);
  CsvTable table;
  table.header = {"priority", "objective",   "eenpc_w",     "ppc_w",
                  "uavtfd_m", tpc,           "offload_col", "offload_row",
                  "access_point", "site",    "status"};
  for (Priority priority : all_priorities()) {
    ScenarioConfig config = base;
    config.weights = priority_weights(priority, base.priority_weight);
    const CellResult cell = solve_cell(config);
    if (cell.ok) {
      const Solution& s = cell.solution;
      table.rows.push_back({to_string(priority), num(s.objective),
                            num(s.costs.eenpc_w), num(s.costs.ppc_w),
                            num(s.costs.uavtfd_m), num(s.costs.uavtpc),
                            num(s.assignment.offload.col),
                            num(s.assignment.offload.row),
                            s.assignment.access_point, s.assignment.site,
                            cell.status});
    } else {
      table.rows.push_back(
          {to_string(priority), "", "", "", "", "", "", "", "", "", cell.status});
    }
  }
  return table;
}

CsvTable offload_option_table(const ScenarioConfig& base) {
  const std::string tpc = std::string("uavtpc_") + tpc_unit(base);
  CsvTable table;
  table.header = {"offload_option", "objective",   "eenpc_w",     "ppc_w",
                  "uavtfd_m",       tpc,           "offload_col", "offload_row",
                  "access_point",   "site",        "status"};
  for (OffloadFilter filter : {OffloadFilter::full, OffloadFilter::limited_to_pbs}) {
    ScenarioConfig config = base;
    config.filter = filter;
    const CellResult cell = solve_cell(config);
    if (cell.ok) {
      const Solution& s = cell.solution;
      table.rows.push_back({to_string(filter), num(s.objective),
                            num(s.costs.eenpc_w), num(s.costs.ppc_w),
                            num(s.costs.uavtfd_m), num(s.costs.uavtpc),
                            num(s.assignment.offload.col),
                            num(s.assignment.offload.row),
                            s.assignment.access_point, s.assignment.site,
                            cell.status});
    } else {
      table.rows.push_back(
          {to_string(filter), "", "", "", "", "", "", "", "", "", cell.status});
    }
  }
  return table;
}

ScenarioConfig test_case_two_config(const ScenarioConfig& base) {
  ScenarioConfig config = base;
  config.topology.pbs_count = 1;
  config.topology.mbs_count = 1;
  config.topology.pbs_positions_m =
      std::vector<Vec2>{config.distant_pbs_position_m};
  config.uav.mbs_gain = 200.0;
  config.weights = priority_weights(Priority::UavTotalPower, base.priority_weight);
  return config;
}

}  // namespace

CsvTable run_sweep(const SweepSpec& spec) {
  spec.validate();
  switch (spec.parameter) {
    case SweepParameter::cpu_fraction:
      return cpu_fraction_table(spec.base, spec.values);
    case SweepParameter::mbs_gain:
      return gain_table(spec.base, spec.values, {});
    case SweepParameter::upe:
      return upe_table(spec.base, spec.values);
    case SweepParameter::priority:
      return priority_table(spec.base);
    case SweepParameter::offload_option:
      return offload_option_table(spec.base);
  }
  throw std::logic_error("unreachable sweep parameter");
}

TestCaseOneResult run_test_case_one(const ScenarioConfig& base) {
  const std::vector<double> fractions =
      SweepSpec::default_values(SweepParameter::cpu_fraction);
  TestCaseOneResult result;
  result.priorities = cpu_fraction_table(base, fractions);
  result.gain_sweep = gain_table(
      base, SweepSpec::default_values(SweepParameter::mbs_gain), fractions);
  return result;
}

CsvTable run_test_case_two(const ScenarioConfig& base) {
  return upe_table(test_case_two_config(base),
                   SweepSpec::default_values(SweepParameter::upe));
}

}  // namespace uavfog
