#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uavfog/common.hpp"

namespace uavfog {

enum class NodeKind {
  Pbs,
  Mbs,
  Onu,
  Olt,
  MetroSwitch,
  MetroRouterPort,
  CoreNode,
  PicoFogServer,
  MacroFogServer,
  CloudServer,
  FogSwitch,
  FogRouterPort,
};

const char* to_string(NodeKind kind);
bool is_access_point(NodeKind kind);
bool is_server(NodeKind kind);
bool is_lan_device(NodeKind kind);
// Network transport devices: everything that carries backhaul traffic and is
// accounted in the end-to-end network power (access points through core).
bool is_network_device(NodeKind kind);

// One physical element. capacity is Mbps for network/LAN kinds and MIPS for
// server kinds. max_servers (server kinds only) bounds how many identical
// units a site may activate.
struct NodeSpec {
  std::string id;
  NodeKind kind = NodeKind::Pbs;
  double max_power_w = 0.0;
  double idle_power_w = 0.0;
  double capacity = 0.0;
  double pue = 1.0;
  std::optional<Vec2> position_m;  // PBS/MBS/ONU only
  int max_servers = 1;             // server kinds only

  void validate() const;
};

// Linear power slope (max - idle) / capacity, in W per Mbps or W per MIPS.
double efficiency(const NodeSpec& spec);

// A processing location: one server catalog entry plus the LAN devices
// (fog switch + fog router port) that interconnect its servers. `attach`
// names the node the site hangs off: the hosting PBS/MBS for fog sites,
// the core node for the cloud.
struct ProcessingSite {
  std::string id;
  std::string server;
  std::vector<std::string> lan;
  std::string attach;
};

// The directed cloud-fog graph: access points feed ONUs, ONUs feed a single
// OLT, then metro switch -> metro router port -> core node. Traffic flows
// uplink only, so each access point has exactly one route to each reachable
// processing site.
class Topology {
 public:
  const NodeSpec& node(const std::string& id) const;
  bool has_node(const std::string& id) const { return index_.count(id) > 0; }
  const std::vector<NodeSpec>& nodes() const { return nodes_; }
  const std::vector<ProcessingSite>& sites() const { return sites_; }
  const ProcessingSite& site(const std::string& id) const;
  const std::vector<std::string>& access_points() const { return aps_; }

  // Uplink parent id, empty for the root (core node).
  const std::string& uplink_parent(const std::string& id) const;
  // Physical uplink chain from an access point to the root, inclusive.
  std::vector<std::string> uplink_chain(const std::string& ap) const;

  // Sites whose attach node lies on the access point's uplink chain.
  std::vector<std::string> reachable_sites(const std::string& ap) const;

  // Ordered node sequence from the access point to the site's server,
  // inclusive. Collocated fog: {ap, server}. The site LAN devices are not
  // part of the transport route; they are accounted site-side.
  std::vector<std::string> uplink_route(const std::string& ap,
                                        const std::string& site_id) const;

  // Construction API. finalize() validates the wiring invariants and must be
  // called before any query.
  void add_node(NodeSpec spec);
  void add_uplink(const std::string& child, const std::string& parent);
  void add_site(ProcessingSite site);
  void finalize();

  // Construction ordinal, used for deterministic tie-breaking.
  int ordinal(const std::string& id) const;

 private:
  std::vector<NodeSpec> nodes_;
  std::map<std::string, int> index_;
  std::map<std::string, std::string> parent_;
  std::vector<ProcessingSite> sites_;
  std::map<std::string, int> site_index_;
  std::vector<std::string> aps_;
  bool finalized_ = false;
};

struct TopologyConfig {
  int pbs_count = 9;
  int mbs_count = 1;
  std::uint64_t seed = 42;

  // PBS layout: rows of three, 100 m apart, unless explicit positions are
  // given. The MBS sits at the top-center of the region.
  double pbs_first_offset_m = 75.0;
  double pbs_interval_m = 100.0;
  std::optional<std::vector<Vec2>> pbs_positions_m;
  Vec2 mbs_position_m{187.5, 375.0};

  double pue_cloud = 1.0;
  double pue_metro = 1.12;  // metro, core, OLT and the MBS site
  double pue_pbs_min = 1.3;
  double pue_pbs_max = 1.5;

  // Per-kind parameter overrides; entries replace the catalog defaults.
  struct DeviceParams {
    std::optional<double> max_power_w;
    std::optional<double> idle_power_w;
    std::optional<double> capacity;
    std::optional<int> max_servers;
  };
  std::map<NodeKind, DeviceParams> overrides;
};

// Catalog defaults for one device kind (the vendor-datasheet numbers).
NodeSpec catalog_default(NodeKind kind);

Topology build_default_topology(const TopologyConfig& config);

// Human-readable dump of the resolved topology for auditing.
std::string describe(const Topology& topology);

}  // namespace uavfog
