#pragma once

#include <string>

#include "uavfog/optimizer.hpp"

namespace uavfog {

// A full experiment description: instance parameters plus scenario knobs.
// Every field has a default matching the reference deployment, so an empty
// config file (or none at all) is a valid instance.
struct ScenarioConfig {
  TopologyConfig topology;
  int grid_width = 16;
  int grid_height = 16;
  double grid_spacing_m = 25.0;
  double pbs_coverage_radius_m = 25.0;
  TaskDemand task;
  UavParams uav;
  Weights weights;
  GridPoint start{1, 1};
  GridPoint dest{16, 2};
  OffloadFilter filter = OffloadFilter::full;
  IprPolicy ipr = IprPolicy::proportional;
  TpcConvention convention = TpcConvention::joules;
  double priority_weight = 1e6;
  // Scarce-fog scenario: where the single far-away PBS sits.
  Vec2 distant_pbs_position_m{200.0, 250.0};
};

ScenarioConfig config_from_json_text(const std::string& text);
ScenarioConfig load_config_file(const std::string& path);
std::string config_to_json_text(const ScenarioConfig& config);

ProblemInstance make_instance(const ScenarioConfig& config);

// Solution records embed the resolved config, so a saved file can be
// re-validated without the original inputs.
std::string solution_to_json_text(const ScenarioConfig& config,
                                  const Solution& solution);

struct SolutionRecord {
  ScenarioConfig config;
  Solution solution;
};

SolutionRecord solution_from_json_text(const std::string& text);

}  // namespace uavfog
