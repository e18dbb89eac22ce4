#pragma once

#include <map>
#include <string>
#include <vector>

#include "uavfog/power.hpp"

namespace uavfog {

// Which access point class the UAV may offload through.
enum class OffloadFilter { full, limited_to_pbs, limited_to_mbs };

const char* to_string(OffloadFilter filter);

// One fully specified optimization instance.
struct ProblemInstance {
  Topology topology;
  Grid grid{16, 16, 25.0};
  CoverageSets cover;
  TaskDemand task;
  UavParams uav;
  Weights weights;
  GridPoint start{1, 1};
  GridPoint dest{16, 2};
  OffloadFilter filter = OffloadFilter::full;
  IprPolicy ipr = IprPolicy::proportional;
  TpcConvention convention = TpcConvention::joules;
  double priority_weight = 1e6;  // the "much greater" weight in priority runs

  void validate() const;
};

struct Solution {
  bool feasible = false;
  std::string infeasible_reason;
  LoadAssignment assignment;
  PathResult path_s_f;
  PathResult path_f_d;
  CostSummary costs;
  UavPower uav_detail;
  NetworkPower network_detail;
  ProcessingPower processing_detail;
  double objective = 0.0;
};

// Globally optimal placement and trajectory by exhaustive enumeration of
// (offload point, access point, site) triples; the two trajectory legs are
// shortest paths, computed with two Dijkstra sweeps. Ties break on
// (objective, offload point row-major, access point order, site order).
Solution solve(const ProblemInstance& instance);

enum class Priority { NetworkPower, ProcessingPower, FlightDistance, UavTotalPower };

const char* to_string(Priority priority);
std::vector<Priority> all_priorities();

// Weight vector that emphasizes one cost term (priority_weight vs 1).
Weights priority_weights(Priority priority, double priority_weight);

std::map<Priority, Solution> solve_all_priorities(const ProblemInstance& instance);

// Re-checks a solution against every model constraint: path adjacency and
// endpoints, coverage, route flow conservation, capacities, server count,
// single offload, and cost/objective recomputation. Returns human-readable
// violations; empty means valid.
std::vector<std::string> validate_solution(const ProblemInstance& instance,
                                           const Solution& solution);

}  // namespace uavfog
