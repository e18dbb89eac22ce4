#pragma once

#include <string>
#include <vector>

#include "uavfog/grid.hpp"
#include "uavfog/topology.hpp"

namespace uavfog {

// How much of a device's idle power the task is charged for.
//   proportional: the task's share of the device capacity (load / capacity).
//   full: the whole idle draw of every activated device.
enum class IprPolicy { proportional, full };

// Unit convention for the UAV total power figure. Under `joules` both the
// radio and the flight component are energies over the journey (transmit
// energy = P_tx * offload duration). Under `watts` the radio component is
// the transmit power and flight is averaged over the journey time.
enum class TpcConvention { joules, watts };

const char* to_string(IprPolicy policy);
const char* to_string(TpcConvention convention);

struct TaskDemand {
  double cpu_mips = 1076.8;  // 10% of one pico fog server
  double bitrate_mbps = 10.0;
};

// Radio and propulsion constants. Defaults are the DJI Mavic Pro battery and
// flight figures plus standard transceiver energy-per-bit constants.
struct UavParams {
  double battery_j = 157183.0;
  double max_flight_m = 13000.0;
  double max_flight_time_s = 21.0 * 60.0;
  double upe = 1.0;  // propulsion efficiency: fraction of max range achievable
  double elec_energy_per_bit_j = 50e-9;
  double amp_energy_per_bit_m2_j = 255e-12;
  double uav_gain = 1.0;
  double pbs_gain = 1.0;
  double mbs_gain = 100.0;
  double offload_duration_s = 1.0;  // data volume = bitrate * this

  // Flight energy coefficient: the battery spread over the range the
  // propulsion actually achieves.
  double energy_per_meter_j() const { return battery_j / (max_flight_m * upe); }
  double cruise_speed_mps() const { return max_flight_m / max_flight_time_s; }

  void validate() const;
};

// The resolved single-task placement: offload point f, access point a,
// processing site v, and the loads this induces. Traffic equals the task
// bitrate on every node of the uplink route and is zero elsewhere.
struct LoadAssignment {
  GridPoint offload;
  std::string access_point;
  NodeKind access_kind = NodeKind::Pbs;
  std::string site;
  std::vector<std::string> route;  // access point .. site server, inclusive
  double traffic_mbps = 0.0;
  double cpu_mips = 0.0;
  int servers_active = 0;
  double offload_distance_m = 0.0;  // f to the access point antenna
};

// Builds and checks an assignment. Throws CapacityError when the site cannot
// host the CPU demand and ConfigError when f is outside the coverage of a.
LoadAssignment make_assignment(const Topology& topology, const Grid& grid,
                               const CoverageSets& cover, const GridPoint& f,
                               const std::string& access_point,
                               const std::string& site_id,
                               const TaskDemand& task);

struct NodeContribution {
  std::string node;
  double proportional_w = 0.0;
  double idle_w = 0.0;
};

// End-to-end network power: every network device on the uplink route pays
// PUE-weighted proportional power for the traffic plus its attributed idle
// share.
struct NetworkPower {
  double total_w = 0.0;
  std::vector<NodeContribution> per_node;
};

NetworkPower network_power(const Topology& topology,
                           const LoadAssignment& assignment, IprPolicy policy);

// Processing power at the chosen site: server proportional + server idle +
// site LAN proportional + site LAN idle.
struct ProcessingPower {
  double server_proportional_w = 0.0;
  double server_idle_w = 0.0;
  double lan_proportional_w = 0.0;
  double lan_idle_w = 0.0;
  double total_w = 0.0;
  std::vector<NodeContribution> per_node;
};

ProcessingPower processing_power(const Topology& topology,
                                 const LoadAssignment& assignment,
                                 IprPolicy policy);

// Friis-style transmitter draw: (E_elec + E_amp * d^2 / gain) * bitrate.
double transmit_power_w(const UavParams& params, double distance_m, double gain,
                        double rate_mbps);

struct UavPower {
  double transmit_w = 0.0;
  double transmit_j = 0.0;
  double flight_j = 0.0;
  double flight_avg_w = 0.0;
  double total = 0.0;  // under the requested convention
};

UavPower uav_power(const UavParams& params, const LoadAssignment& assignment,
                   const PathResult& path_s_to_f, const PathResult& path_f_to_d,
                   TpcConvention convention);

double flight_distance_m(const PathResult& path_s_to_f,
                         const PathResult& path_f_to_d);

struct Weights {
  double alpha = 1.0;  // network power
  double beta = 1.0;   // processing power
  double gamma = 1.0;  // flight distance
  double omega = 1.0;  // UAV total power

  void validate() const;
};

struct CostSummary {
  double eenpc_w = 0.0;
  double ppc_w = 0.0;
  double uavtfd_m = 0.0;
  double uavtpc = 0.0;  // J or W depending on the convention
};

double weighted_objective(const Weights& weights, const CostSummary& costs);

}  // namespace uavfog
