#include <json.hpp>

#include "uavfog/serialize.hpp"
#include "uavfog/version.hpp"

namespace uavfog {

using nlohmann::json;

namespace {

json points_to_json(const std::vector<GridPoint>& points) {
  json arr = json::array();
  for (const GridPoint& p : points) arr.push_back({p.col, p.row});
  return arr;
}

std::vector<GridPoint> points_from_json(const json& arr, const std::string& path) {
  if (!arr.is_array())
    throw ConfigError("solution: '" + path + "' must be an array");
  std::vector<GridPoint> out;
  for (const json& v : arr) {
    if (!v.is_array() || v.size() != 2)
      throw ConfigError("solution: '" + path + "' entries must be [col, row]");
    out.push_back(GridPoint{v[0].get<int>(), v[1].get<int>()});
  }
  return out;
}

json breakdown_to_json(const std::vector<NodeContribution>& nodes) {
  json arr = json::array();
  for (const NodeContribution& c : nodes)
    arr.push_back({{"node", c.node},
                   {"proportional_w", c.proportional_w},
                   {"idle_w", c.idle_w}});
  return arr;
}

std::vector<NodeContribution> breakdown_from_json(const json& arr) {
  std::vector<NodeContribution> out;
  for (const json& v : arr)
    out.push_back(NodeContribution{v.at("node").get<std::string>(),
                                   v.at("proportional_w").get<double>(),
                                   v.at("idle_w").get<double>()});
  return out;
}

}  // namespace

std::string solution_to_json_text(const ScenarioConfig& config,
                                  const Solution& solution) {
  json j;
  j["version"] = kVersion;
  j["config"] = json::parse(config_to_json_text(config));

  json s;
  s["feasible"] = solution.feasible;
  if (!solution.feasible) {
    s["infeasible_reason"] = solution.infeasible_reason;
    j["solution"] = s;
    return j.dump(2) + "\n";
  }

  const LoadAssignment& a = solution.assignment;
  s["offload"] = {a.offload.col, a.offload.row};
  s["access_point"] = a.access_point;
  s["access_kind"] = to_string(a.access_kind);
  s["site"] = a.site;
  s["route"] = a.route;
  s["traffic_mbps"] = a.traffic_mbps;
  s["cpu_mips"] = a.cpu_mips;
  s["servers_active"] = a.servers_active;
  s["offload_distance_m"] = a.offload_distance_m;
  s["path_s_f"] = points_to_json(solution.path_s_f.points);
  s["path_f_d"] = points_to_json(solution.path_f_d.points);
  s["costs"] = {{"eenpc_w", solution.costs.eenpc_w},
                {"ppc_w", solution.costs.ppc_w},
                {"uavtfd_m", solution.costs.uavtfd_m},
                {"uavtpc", solution.costs.uavtpc}};
  s["uav"] = {{"transmit_w", solution.uav_detail.transmit_w},
              {"transmit_j", solution.uav_detail.transmit_j},
              {"flight_j", solution.uav_detail.flight_j},
              {"flight_avg_w", solution.uav_detail.flight_avg_w},
              {"total", solution.uav_detail.total}};
  s["network_breakdown"] = breakdown_to_json(solution.network_detail.per_node);
  s["processing_breakdown"] =
      breakdown_to_json(solution.processing_detail.per_node);
  s["objective"] = solution.objective;
  j["solution"] = s;
  return j.dump(2) + "\n";
}

SolutionRecord solution_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("solution parse error: ") + e.what());
  }
  if (!j.contains("config") || !j.contains("solution"))
    throw ConfigError("solution file must carry 'config' and 'solution'");

  SolutionRecord record;
  record.config = config_from_json_text(j.at("config").dump());

  const json& s = j.at("solution");
  Solution& sol = record.solution;
  sol.feasible = s.at("feasible").get<bool>();
  if (!sol.feasible) {
    sol.infeasible_reason = s.value("infeasible_reason", "");
    return record;
  }

  try {
    LoadAssignment& a = sol.assignment;
    const json& f = s.at("offload");
    a.offload = GridPoint{f[0].get<int>(), f[1].get<int>()};
    a.access_point = s.at("access_point").get<std::string>();
    a.access_kind = s.at("access_kind").get<std::string>() == "mbs"
                        ? NodeKind::Mbs
                        : NodeKind::Pbs;
    a.site = s.at("site").get<std::string>();
    a.route = s.at("route").get<std::vector<std::string>>();
    a.traffic_mbps = s.at("traffic_mbps").get<double>();
    a.cpu_mips = s.at("cpu_mips").get<double>();
    a.servers_active = s.at("servers_active").get<int>();
    a.offload_distance_m = s.at("offload_distance_m").get<double>();

    sol.path_s_f.points = points_from_json(s.at("path_s_f"), "path_s_f");
    sol.path_f_d.points = points_from_json(s.at("path_f_d"), "path_f_d");

    const json& costs = s.at("costs");
    sol.costs.eenpc_w = costs.at("eenpc_w").get<double>();
    sol.costs.ppc_w = costs.at("ppc_w").get<double>();
    sol.costs.uavtfd_m = costs.at("uavtfd_m").get<double>();
    sol.costs.uavtpc = costs.at("uavtpc").get<double>();

    const json& uav = s.at("uav");
    sol.uav_detail.transmit_w = uav.at("transmit_w").get<double>();
    sol.uav_detail.transmit_j = uav.at("transmit_j").get<double>();
    sol.uav_detail.flight_j = uav.at("flight_j").get<double>();
    sol.uav_detail.flight_avg_w = uav.at("flight_avg_w").get<double>();
    sol.uav_detail.total = uav.at("total").get<double>();

    sol.network_detail.per_node = breakdown_from_json(s.at("network_breakdown"));
    for (const NodeContribution& c : sol.network_detail.per_node)
      sol.network_detail.total_w += c.proportional_w + c.idle_w;
    sol.processing_detail.per_node =
        breakdown_from_json(s.at("processing_breakdown"));
    sol.objective = s.at("objective").get<double>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("solution file is malformed: ") + e.what());
  }

  // Leg metadata is derived, not trusted from the file.
  const double spacing = record.config.grid_spacing_m;
  auto relength = [spacing](PathResult* path) {
    path->steps = StepCount{};
    path->length_m = 0.0;
    for (std::size_t i = 0; i + 1 < path->points.size(); ++i) {
      const GridPoint& p = path->points[i];
      const GridPoint& q = path->points[i + 1];
      const bool diagonal = p.col != q.col && p.row != q.row;
      (diagonal ? path->steps.diag : path->steps.straight) += 1;
      path->length_m += euclid(p, q, spacing);
    }
  };
  relength(&sol.path_s_f);
  relength(&sol.path_f_d);
  return record;
}

}  // namespace uavfog
