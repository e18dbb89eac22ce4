#include "uavfog/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace uavfog {

const char* to_string(OffloadFilter filter) {
  switch (filter) {
    case OffloadFilter::full: return "full";
    case OffloadFilter::limited_to_pbs: return "limited_to_pbs";
    case OffloadFilter::limited_to_mbs: return "limited_to_mbs";
  }
  return "?";
}

const char* to_string(Priority priority) {
  switch (priority) {
    case Priority::NetworkPower: return "eenpc";
    case Priority::ProcessingPower: return "ppc";
    case Priority::FlightDistance: return "uavtfd";
    case Priority::UavTotalPower: return "uavtpc";
  }
  return "?";
}

std::vector<Priority> all_priorities() {
  return {Priority::NetworkPower, Priority::ProcessingPower,
          Priority::FlightDistance, Priority::UavTotalPower};
}

Weights priority_weights(Priority priority, double priority_weight) {
  Weights w{1.0, 1.0, 1.0, 1.0};
  switch (priority) {
    case Priority::NetworkPower: w.alpha = priority_weight; break;
    case Priority::ProcessingPower: w.beta = priority_weight; break;
    case Priority::FlightDistance: w.gamma = priority_weight; break;
    case Priority::UavTotalPower: w.omega = priority_weight; break;
  }
  return w;
}

void ProblemInstance::validate() const {
  if (!grid.contains(start) || !grid.contains(dest))
    throw ConfigError("start/destination must lie on the grid");
  weights.validate();
  uav.validate();
  if (task.bitrate_mbps < 0.0 || task.cpu_mips < 0.0)
    throw ConfigError("task demands must be non-negative");
  if (priority_weight <= 0.0)
    throw ConfigError("priority weight must be positive");
}

namespace {

struct Candidate {
  double objective = std::numeric_limits<double>::infinity();
  int f_index = 0;
  int ap_ordinal = 0;
  int site_ordinal = 0;

  bool better_than(const Candidate& other) const {
    if (objective != other.objective) return objective < other.objective;
    if (f_index != other.f_index) return f_index < other.f_index;
    if (ap_ordinal != other.ap_ordinal) return ap_ordinal < other.ap_ordinal;
    return site_ordinal < other.site_ordinal;
  }
};

bool ap_allowed(NodeKind kind, OffloadFilter filter) {
  switch (filter) {
    case OffloadFilter::full: return true;
    case OffloadFilter::limited_to_pbs: return kind == NodeKind::Pbs;
    case OffloadFilter::limited_to_mbs: return kind == NodeKind::Mbs;
  }
  return false;
}

// Cheap feasibility screen so cost evaluation never throws mid-enumeration.
bool candidate_fits(const Topology& topo, const std::string& ap,
                    const std::string& site_id, const TaskDemand& task,
                    bool* capacity_hit) {
  const ProcessingSite& site = topo.site(site_id);
  const NodeSpec& server = topo.node(site.server);
  if (task.cpu_mips > server.capacity * server.max_servers) {
    *capacity_hit = true;
    return false;
  }
  for (const std::string& id : topo.uplink_route(ap, site_id)) {
    const NodeSpec& spec = topo.node(id);
    if (is_network_device(spec.kind) && task.bitrate_mbps > spec.capacity) {
      *capacity_hit = true;
      return false;
    }
  }
  for (const std::string& id : site.lan) {
    if (task.bitrate_mbps > topo.node(id).capacity) {
      *capacity_hit = true;
      return false;
    }
  }
  return true;
}

}  // namespace

Solution solve(const ProblemInstance& instance) {
  instance.validate();
  const Grid& grid = instance.grid;
  const Topology& topo = instance.topology;

  const std::vector<StepCount> from_start = shortest_distances(grid, instance.start);
  const std::vector<StepCount> from_dest = shortest_distances(grid, instance.dest);

  // Access points ordered by construction, each with the offload points it
  // covers and the sites it can reach.
  struct ApChoice {
    std::string id;
    NodeKind kind;
    int ordinal;
    const std::set<int>* covered;
    std::vector<std::string> sites;
  };
  std::vector<ApChoice> choices;
  for (const std::string& ap : topo.access_points()) {
    const NodeSpec& spec = topo.node(ap);
    if (!ap_allowed(spec.kind, instance.filter)) continue;
    ApChoice c;
    c.id = ap;
    c.kind = spec.kind;
    c.ordinal = topo.ordinal(ap);
    c.covered = spec.kind == NodeKind::Mbs
                    ? &instance.cover.mbs_covered
                    : (instance.cover.psi.count(ap) ? &instance.cover.psi.at(ap)
                                                    : nullptr);
    c.sites = topo.reachable_sites(ap);
    if (c.covered && !c.covered->empty() && !c.sites.empty())
      choices.push_back(std::move(c));
  }

  Candidate best;
  LoadAssignment best_assignment;
  bool any_candidate = false;
  bool capacity_hit = false;

  for (const ApChoice& choice : choices) {
    for (const std::string& site_id : choice.sites) {
      if (!candidate_fits(topo, choice.id, site_id, instance.task, &capacity_hit))
        continue;

      // Costs that do not depend on the offload point.
      LoadAssignment base;
      {
        const ProcessingSite& site = topo.site(site_id);
        const NodeSpec& server = topo.node(site.server);
        base.access_point = choice.id;
        base.access_kind = choice.kind;
        base.site = site_id;
        base.route = topo.uplink_route(choice.id, site_id);
        base.traffic_mbps = instance.task.bitrate_mbps;
        base.cpu_mips = instance.task.cpu_mips;
        base.servers_active =
            instance.task.cpu_mips > 0.0
                ? std::max(1, static_cast<int>(std::ceil(instance.task.cpu_mips /
                                                         server.capacity)))
                : 0;
      }
      const double eenpc = network_power(topo, base, instance.ipr).total_w;
      const double ppc = processing_power(topo, base, instance.ipr).total_w;
      const Vec2 ap_pos = *topo.node(choice.id).position_m;

      for (int fi : *choice.covered) {
        any_candidate = true;
        const GridPoint f = grid.point(fi);

        LoadAssignment assignment = base;
        assignment.offload = f;
        assignment.offload_distance_m = distance_m(grid.position_m(f), ap_pos);

        PathResult leg1, leg2;
        leg1.length_m = from_start[fi].meters(grid.spacing_m());
        leg2.length_m = from_dest[fi].meters(grid.spacing_m());

        CostSummary costs;
        costs.eenpc_w = eenpc;
        costs.ppc_w = ppc;
        costs.uavtfd_m = flight_distance_m(leg1, leg2);
        costs.uavtpc =
            uav_power(instance.uav, assignment, leg1, leg2, instance.convention)
                .total;

        Candidate cand;
        cand.objective = weighted_objective(instance.weights, costs);
        cand.f_index = fi;
        cand.ap_ordinal = choice.ordinal;
        cand.site_ordinal = topo.ordinal(topo.site(site_id).server);
        if (cand.better_than(best)) {
          best = cand;
          best_assignment = assignment;
        }
      }
    }
  }

  Solution solution;
  if (!any_candidate) {
    solution.feasible = false;
    solution.infeasible_reason =
        capacity_hit ? "no feasible offload: capacity exceeded everywhere"
                     : "no feasible offload: no coverage under the offload filter";
    return solution;
  }

  solution.feasible = true;
  solution.assignment = best_assignment;
  solution.path_s_f = shortest_path(grid, instance.start, best_assignment.offload);
  solution.path_f_d = shortest_path(grid, best_assignment.offload, instance.dest);
  solution.network_detail = network_power(topo, best_assignment, instance.ipr);
  solution.processing_detail = processing_power(topo, best_assignment, instance.ipr);
  solution.uav_detail = uav_power(instance.uav, best_assignment, solution.path_s_f,
                                  solution.path_f_d, instance.convention);
  solution.costs.eenpc_w = solution.network_detail.total_w;
  solution.costs.ppc_w = solution.processing_detail.total_w;
  solution.costs.uavtfd_m = flight_distance_m(solution.path_s_f, solution.path_f_d);
  solution.costs.uavtpc = solution.uav_detail.total;
  solution.objective = weighted_objective(instance.weights, solution.costs);

  const std::vector<std::string> violations = validate_solution(instance, solution);
  if (!violations.empty())
    throw std::logic_error("solver produced an invalid solution: " + violations[0]);
  return solution;
}

std::map<Priority, Solution> solve_all_priorities(const ProblemInstance& instance) {
  std::map<Priority, Solution> out;
  for (Priority p : all_priorities()) {
    ProblemInstance run = instance;
    run.weights = priority_weights(p, instance.priority_weight);
    out.emplace(p, solve(run));
  }
  return out;
}

std::vector<std::string> validate_solution(const ProblemInstance& instance,
                                           const Solution& solution) {
  std::vector<std::string> violations;
  if (!solution.feasible) {
    violations.push_back("solution is marked infeasible");
    return violations;
  }
  const Grid& grid = instance.grid;
  const Topology& topo = instance.topology;
  const LoadAssignment& a = solution.assignment;

  // Single offload triple.
  if (a.access_point.empty() || a.site.empty() || !grid.contains(a.offload))
    violations.push_back("offload triple incomplete");

  // Coverage: f must be inside the chosen access point's cell.
  if (!a.access_point.empty() && topo.has_node(a.access_point)) {
    const NodeSpec& ap = topo.node(a.access_point);
    if (a.access_kind != ap.kind)
      violations.push_back("access point class mismatch");
    const int fi = grid.index(a.offload);
    const bool covered =
        ap.kind == NodeKind::Mbs
            ? instance.cover.mbs_covered.count(fi) > 0
            : instance.cover.psi.count(a.access_point) &&
                  instance.cover.psi.at(a.access_point).count(fi) > 0;
    if (!covered) violations.push_back("coverage violated");
    if (!ap_allowed(ap.kind, instance.filter))
      violations.push_back("offload filter violated");
    if (ap.position_m) {
      const double d = distance_m(grid.position_m(a.offload), *ap.position_m);
      if (std::fabs(d - a.offload_distance_m) > 1e-9 * std::max(1.0, d))
        violations.push_back("offload distance mismatch");
    }
  }

  // Trajectory legs: endpoints and 8-neighbour adjacency.
  auto check_path = [&](const PathResult& path, const GridPoint& from,
                        const GridPoint& to) {
    if (path.points.empty() || !(path.points.front() == from) ||
        !(path.points.back() == to)) {
      violations.push_back("path endpoints violated");
      return;
    }
    for (std::size_t i = 0; i + 1 < path.points.size(); ++i) {
      const GridPoint& p = path.points[i];
      const GridPoint& q = path.points[i + 1];
      const int dc = std::abs(p.col - q.col), dr = std::abs(p.row - q.row);
      if (!grid.contains(p) || !grid.contains(q) || dc > 1 || dr > 1 ||
          (dc == 0 && dr == 0)) {
        violations.push_back("grid adjacency violated");
        return;
      }
    }
  };
  check_path(solution.path_s_f, instance.start, a.offload);
  check_path(solution.path_f_d, a.offload, instance.dest);

  // Flow conservation: the loaded nodes must be exactly the unique uplink
  // route for (a, v).
  try {
    const std::vector<std::string> route = topo.uplink_route(a.access_point, a.site);
    if (route != a.route)
      violations.push_back("network flow conservation violated");
  } catch (const std::exception&) {
    violations.push_back("network flow conservation violated (unreachable site)");
  }

  // Demand and capacity.
  if (a.traffic_mbps != instance.task.bitrate_mbps ||
      a.cpu_mips != instance.task.cpu_mips)
    violations.push_back("task demand not met");
  if (topo.has_node(a.site)) {
    const NodeSpec& server = topo.node(topo.site(a.site).server);
    const int expected_ns =
        a.cpu_mips > 0.0
            ? std::max(1, static_cast<int>(std::ceil(a.cpu_mips / server.capacity)))
            : 0;
    if (a.servers_active != expected_ns)
      violations.push_back("server count violated");
    if (a.servers_active > server.max_servers)
      violations.push_back("capacity violated: server pool exceeded");
    for (const std::string& id : a.route) {
      const NodeSpec& spec = topo.node(id);
      if (is_network_device(spec.kind) && a.traffic_mbps > spec.capacity)
        violations.push_back("capacity violated: " + id);
    }
  }

  // Costs and objective must reproduce from the assignment.
  auto close = [](double x, double y) {
    const double scale = std::max({std::fabs(x), std::fabs(y), 1.0});
    return std::fabs(x - y) <= 1e-9 * scale;
  };
  try {
    const double eenpc = network_power(topo, a, instance.ipr).total_w;
    const double ppc = processing_power(topo, a, instance.ipr).total_w;
    const double tfd = flight_distance_m(solution.path_s_f, solution.path_f_d);
    const double tpc = uav_power(instance.uav, a, solution.path_s_f,
                                 solution.path_f_d, instance.convention)
                           .total;
    if (!close(eenpc, solution.costs.eenpc_w) || !close(ppc, solution.costs.ppc_w) ||
        !close(tfd, solution.costs.uavtfd_m) || !close(tpc, solution.costs.uavtpc))
      violations.push_back("cost mismatch");
    if (!close(weighted_objective(instance.weights, solution.costs),
               solution.objective))
      violations.push_back("objective mismatch");
  } catch (const std::exception& e) {
    violations.push_back(std::string("cost recomputation failed: ") + e.what());
  }

  return violations;
}

}  // namespace uavfog
