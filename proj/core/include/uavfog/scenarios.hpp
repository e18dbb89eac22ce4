#pragma once

#include <string>
#include <vector>

#include "uavfog/serialize.hpp"

namespace uavfog {

// Parameters a sweep can vary. cpu_fraction is taken relative to one pico
// fog server's MIPS capacity; offload_option compares the free choice with
// the PBS-only restriction.
enum class SweepParameter { cpu_fraction, mbs_gain, upe, priority, offload_option };

const char* to_string(SweepParameter parameter);
SweepParameter sweep_parameter_from(const std::string& name);

struct SweepSpec {
  ScenarioConfig base;
  SweepParameter parameter = SweepParameter::cpu_fraction;
  std::vector<double> values;  // unused for priority/offload_option sweeps

  void validate() const;
  static std::vector<double> default_values(SweepParameter parameter);
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_string() const;
};

CsvTable run_sweep(const SweepSpec& spec);

// Workload sweep: every CPU fraction under the four priority weightings,
// then the same workloads at MBS gains 100/150/200 while minimizing the
// UAV's total power.
struct TestCaseOneResult {
  CsvTable priorities;
  CsvTable gain_sweep;
};

TestCaseOneResult run_test_case_one(const ScenarioConfig& base);

// Propulsion-efficiency sweep: one distant PBS versus an always-available
// high-gain MBS, full choice against the PBS-only restriction.
CsvTable run_test_case_two(const ScenarioConfig& base);

}  // namespace uavfog
