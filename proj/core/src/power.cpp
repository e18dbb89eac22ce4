#include "uavfog/power.hpp"

#include <cmath>

namespace uavfog {

const char* to_string(IprPolicy policy) {
  return policy == IprPolicy::proportional ? "proportional" : "full";
}

const char* to_string(TpcConvention convention) {
  return convention == TpcConvention::joules ? "joules" : "watts";
}

void UavParams::validate() const {
  if (battery_j <= 0.0 || max_flight_m <= 0.0 || max_flight_time_s <= 0.0)
    throw ConfigError("UAV battery/flight figures must be positive");
  if (!(upe > 0.0) || upe > 1.0)
    throw ConfigError("UAV propulsion efficiency must lie in (0, 1]");
  if (elec_energy_per_bit_j < 0.0 || amp_energy_per_bit_m2_j < 0.0)
    throw ConfigError("radio energy constants must be non-negative");
  if (uav_gain < 1.0 || pbs_gain < 1.0 || mbs_gain < 1.0)
    throw ConfigError("antenna gains must be >= 1");
  if (offload_duration_s <= 0.0)
    throw ConfigError("offload duration must be positive");
}

void Weights::validate() const {
  if (alpha < 0.0 || beta < 0.0 || gamma < 0.0 || omega < 0.0)
    throw ConfigError("objective weights must be non-negative");
}

LoadAssignment make_assignment(const Topology& topology, const Grid& grid,
                               const CoverageSets& cover, const GridPoint& f,
                               const std::string& access_point,
                               const std::string& site_id,
                               const TaskDemand& task) {
  const NodeSpec& ap = topology.node(access_point);
  if (!is_access_point(ap.kind))
    throw ConfigError(access_point + " is not an access point");
  if (!ap.position_m)
    throw ConfigError(access_point + " has no position");

  const int fi = grid.index(f);
  const bool covered =
      ap.kind == NodeKind::Mbs
          ? cover.mbs_covered.count(fi) > 0
          : cover.psi.count(access_point) && cover.psi.at(access_point).count(fi);
  if (!covered)
    throw ConfigError("offload point (" + std::to_string(f.col) + "," +
                      std::to_string(f.row) + ") is outside the coverage of " +
                      access_point);

  const ProcessingSite& site = topology.site(site_id);
  const NodeSpec& server = topology.node(site.server);
  const int ns = static_cast<int>(std::ceil(task.cpu_mips / server.capacity));
  if (ns > server.max_servers)
    throw CapacityError("site " + site_id + " cannot host " +
                        std::to_string(task.cpu_mips) + " MIPS (needs " +
                        std::to_string(ns) + " servers, has " +
                        std::to_string(server.max_servers) + ")");

  LoadAssignment out;
  out.offload = f;
  out.access_point = access_point;
  out.access_kind = ap.kind;
  out.site = site_id;
  out.route = topology.uplink_route(access_point, site_id);
  out.traffic_mbps = task.bitrate_mbps;
  out.cpu_mips = task.cpu_mips;
  out.servers_active = task.cpu_mips > 0.0 ? std::max(ns, 1) : 0;
  out.offload_distance_m = distance_m(grid.position_m(f), *ap.position_m);
  return out;
}

namespace {

double idle_ratio(IprPolicy policy, double load, double capacity) {
  return policy == IprPolicy::full ? 1.0 : load / capacity;
}

}  // namespace

NetworkPower network_power(const Topology& topology,
                           const LoadAssignment& assignment, IprPolicy policy) {
  NetworkPower out;
  const double traffic = assignment.traffic_mbps;
  if (traffic == 0.0) return out;

  for (const std::string& id : assignment.route) {
    const NodeSpec& spec = topology.node(id);
    if (!is_network_device(spec.kind)) continue;  // servers are accounted in PPC
    if (traffic > spec.capacity)
      throw CapacityError("traffic " + std::to_string(traffic) +
                          " Mbps exceeds capacity of " + id);
    NodeContribution c;
    c.node = id;
    c.proportional_w = spec.pue * efficiency(spec) * traffic;
    c.idle_w = spec.pue * spec.idle_power_w *
               idle_ratio(policy, traffic, spec.capacity);
    out.total_w += c.proportional_w + c.idle_w;
    out.per_node.push_back(std::move(c));
  }
  return out;
}

ProcessingPower processing_power(const Topology& topology,
                                 const LoadAssignment& assignment,
                                 IprPolicy policy) {
  ProcessingPower out;
  if (assignment.cpu_mips == 0.0 && assignment.traffic_mbps == 0.0) return out;

  const ProcessingSite& site = topology.site(assignment.site);
  const NodeSpec& server = topology.node(site.server);
  const int ns = assignment.servers_active;
  if (assignment.cpu_mips > server.capacity * server.max_servers)
    throw CapacityError("CPU demand exceeds the capacity of site " + site.id);

  const bool site_active = assignment.cpu_mips > 0.0;  // Q_v
  if (site_active) {
    // Idle share is taken against the activated server pool, so a fully used
    // pool and a single fully used server attribute the same ratio.
    NodeContribution sc;
    sc.node = site.server;
    sc.proportional_w = server.pue * efficiency(server) * assignment.cpu_mips;
    sc.idle_w = server.pue * server.idle_power_w * ns *
                idle_ratio(policy, assignment.cpu_mips, server.capacity * ns);
    out.server_proportional_w = sc.proportional_w;
    out.server_idle_w = sc.idle_w;
    out.per_node.push_back(std::move(sc));
  }

  const double lan_traffic = assignment.traffic_mbps;
  for (const std::string& id : site.lan) {
    const NodeSpec& lan = topology.node(id);
    if (lan_traffic > lan.capacity)
      throw CapacityError("traffic exceeds capacity of LAN device " + id);
    NodeContribution c;
    c.node = id;
    c.proportional_w = lan.pue * efficiency(lan) * lan_traffic;
    if (site_active)
      c.idle_w = lan.pue * lan.idle_power_w *
                 idle_ratio(policy, lan_traffic, lan.capacity);
    out.lan_proportional_w += c.proportional_w;
    out.lan_idle_w += c.idle_w;
    out.per_node.push_back(std::move(c));
  }

  out.total_w = out.server_proportional_w + out.server_idle_w +
                out.lan_proportional_w + out.lan_idle_w;
  return out;
}

double transmit_power_w(const UavParams& params, double distance_m, double gain,
                        double rate_mbps) {
  if (distance_m < 0.0) throw ConfigError("negative transmit distance");
  if (gain < 1.0) throw ConfigError("antenna gain must be >= 1");
  if (rate_mbps < 0.0) throw ConfigError("negative bitrate");
  const double per_bit = params.elec_energy_per_bit_j +
                         params.amp_energy_per_bit_m2_j * distance_m *
                             distance_m / gain;
  return per_bit * rate_mbps * 1e6;
}

double flight_distance_m(const PathResult& path_s_to_f,
                         const PathResult& path_f_to_d) {
  return path_s_to_f.length_m + path_f_to_d.length_m;
}

UavPower uav_power(const UavParams& params, const LoadAssignment& assignment,
                   const PathResult& path_s_to_f, const PathResult& path_f_to_d,
                   TpcConvention convention) {
  const double gain =
      params.uav_gain *
      (assignment.access_kind == NodeKind::Mbs ? params.mbs_gain
                                               : params.pbs_gain);
  UavPower out;
  out.transmit_w = transmit_power_w(params, assignment.offload_distance_m, gain,
                                    assignment.traffic_mbps);
  out.transmit_j = out.transmit_w * params.offload_duration_s;

  const double tfd = flight_distance_m(path_s_to_f, path_f_to_d);
  out.flight_j = params.energy_per_meter_j() * tfd;
  const double journey_s = tfd / params.cruise_speed_mps();
  out.flight_avg_w = journey_s > 0.0 ? out.flight_j / journey_s : 0.0;

  out.total = convention == TpcConvention::joules
                  ? out.transmit_j + out.flight_j
                  : out.transmit_w + out.flight_avg_w;
  return out;
}

double weighted_objective(const Weights& weights, const CostSummary& costs) {
  weights.validate();
  return weights.alpha * costs.eenpc_w + weights.beta * costs.ppc_w +
         weights.gamma * costs.uavtfd_m + weights.omega * costs.uavtpc;
}

}  // namespace uavfog
