#include "uavfog/topology.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace uavfog {

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Pbs: return "pbs";
    case NodeKind::Mbs: return "mbs";
    case NodeKind::Onu: return "onu";
    case NodeKind::Olt: return "olt";
    case NodeKind::MetroSwitch: return "metro_switch";
    case NodeKind::MetroRouterPort: return "metro_router_port";
    case NodeKind::CoreNode: return "core_node";
    case NodeKind::PicoFogServer: return "pico_fog";
    case NodeKind::MacroFogServer: return "macro_fog";
    case NodeKind::CloudServer: return "cloud";
    case NodeKind::FogSwitch: return "fog_switch";
    case NodeKind::FogRouterPort: return "fog_router_port";
  }
  return "?";
}

bool is_access_point(NodeKind kind) {
  return kind == NodeKind::Pbs || kind == NodeKind::Mbs;
}

bool is_server(NodeKind kind) {
  return kind == NodeKind::PicoFogServer || kind == NodeKind::MacroFogServer ||
         kind == NodeKind::CloudServer;
}

bool is_lan_device(NodeKind kind) {
  return kind == NodeKind::FogSwitch || kind == NodeKind::FogRouterPort;
}

bool is_network_device(NodeKind kind) {
  switch (kind) {
    case NodeKind::Pbs:
    case NodeKind::Mbs:
    case NodeKind::Onu:
    case NodeKind::Olt:
    case NodeKind::MetroSwitch:
    case NodeKind::MetroRouterPort:
    case NodeKind::CoreNode:
      return true;
    default:
      return false;
  }
}

void NodeSpec::validate() const {
  if (id.empty()) throw ConfigError("node without id");
  if (!(capacity > 0.0))
    throw ConfigError("node " + id + ": capacity must be positive");
  if (idle_power_w > max_power_w)
    throw ConfigError("node " + id + ": idle power exceeds max power");
  if (idle_power_w < 0.0)
    throw ConfigError("node " + id + ": negative idle power");
  if (pue < 1.0) throw ConfigError("node " + id + ": PUE must be >= 1");
  const double eff = (max_power_w - idle_power_w) / capacity;
  if (!std::isfinite(eff) || eff < 0.0)
    throw ConfigError("node " + id + ": ill-formed power slope");
  if (is_server(kind) && max_servers < 1)
    throw ConfigError("node " + id + ": max_servers must be >= 1");
  if (position_m && !is_access_point(kind) && kind != NodeKind::Onu)
    throw ConfigError("node " + id + ": only access points and ONUs carry positions");
}

double efficiency(const NodeSpec& spec) {
  return (spec.max_power_w - spec.idle_power_w) / spec.capacity;
}

// Datasheet-derived catalog. Network bitrates are stored in Mbps, server
// capacities in MIPS. Server pools default to un-capacitated; scenarios that
// model scarce fog capacity override max_servers.
NodeSpec catalog_default(NodeKind kind) {
  NodeSpec spec;
  spec.kind = kind;
  if (is_server(kind)) spec.max_servers = 1000000;
  switch (kind) {
    case NodeKind::Pbs:
      spec.max_power_w = 21;
      spec.idle_power_w = 19;
      spec.capacity = 300;
      break;
    case NodeKind::Mbs:  // 3-sector 2x2 MIMO LTE site
      spec.max_power_w = 528;
      spec.idle_power_w = 333;
      spec.capacity = 72;
      break;
    case NodeKind::Onu:
      spec.max_power_w = 15;
      spec.idle_power_w = 9;
      spec.capacity = 10e3;
      break;
    case NodeKind::Olt:
      spec.max_power_w = 1940;
      spec.idle_power_w = 60;
      spec.capacity = 8600e3;
      break;
    case NodeKind::MetroSwitch:
      spec.max_power_w = 470;
      spec.idle_power_w = 423;
      spec.capacity = 600e3;
      break;
    case NodeKind::MetroRouterPort:
      spec.max_power_w = 30;
      spec.idle_power_w = 27;
      spec.capacity = 40e3;
      break;
    case NodeKind::CoreNode:  // aggregate of router ports, EDFAs, transponders
      spec.max_power_w = 955;
      spec.idle_power_w = 859;
      spec.capacity = 40e3;
      break;
    case NodeKind::FogSwitch:
      spec.max_power_w = 210;
      spec.idle_power_w = 189;
      spec.capacity = 600e3;
      break;
    case NodeKind::FogRouterPort:
      spec.max_power_w = 13;
      spec.idle_power_w = 12;
      spec.capacity = 40e3;
      break;
    case NodeKind::PicoFogServer:
      spec.max_power_w = 180;
      spec.idle_power_w = 108;
      spec.capacity = 10768;
      break;
    case NodeKind::MacroFogServer:
      spec.max_power_w = 450;
      spec.idle_power_w = 270;
      spec.capacity = 73193;
      break;
    case NodeKind::CloudServer:
      spec.max_power_w = 495;
      spec.idle_power_w = 297;
      spec.capacity = 293415;
      break;
  }
  return spec;
}

const NodeSpec& Topology::node(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw ConfigError("unknown node: " + id);
  return nodes_[it->second];
}

const ProcessingSite& Topology::site(const std::string& id) const {
  auto it = site_index_.find(id);
  if (it == site_index_.end()) throw ConfigError("unknown site: " + id);
  return sites_[it->second];
}

int Topology::ordinal(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw ConfigError("unknown node: " + id);
  return it->second;
}

const std::string& Topology::uplink_parent(const std::string& id) const {
  static const std::string kNone;
  auto it = parent_.find(id);
  return it == parent_.end() ? kNone : it->second;
}

std::vector<std::string> Topology::uplink_chain(const std::string& ap) const {
  if (!is_access_point(node(ap).kind))
    throw ConfigError(ap + " is not an access point");
  std::vector<std::string> chain{ap};
  std::string cur = ap;
  while (true) {
    const std::string& parent = uplink_parent(cur);
    if (parent.empty()) break;
    chain.push_back(parent);
    cur = parent;
  }
  return chain;
}

std::vector<std::string> Topology::reachable_sites(const std::string& ap) const {
  const std::vector<std::string> chain = uplink_chain(ap);
  std::vector<std::string> out;
  for (const ProcessingSite& site : sites_) {
    if (std::find(chain.begin(), chain.end(), site.attach) != chain.end())
      out.push_back(site.id);
  }
  return out;
}

std::vector<std::string> Topology::uplink_route(const std::string& ap,
                                                const std::string& site_id) const {
  const ProcessingSite& target = site(site_id);
  std::vector<std::string> route;
  for (const std::string& hop : uplink_chain(ap)) {
    route.push_back(hop);
    if (hop == target.attach) {
      route.push_back(target.server);
      return route;
    }
  }
  throw ConfigError("site " + site_id + " is not reachable uplink from " + ap);
}

void Topology::add_node(NodeSpec spec) {
  if (finalized_) throw std::logic_error("topology already finalized");
  spec.validate();
  if (index_.count(spec.id)) throw ConfigError("duplicate node id: " + spec.id);
  index_[spec.id] = static_cast<int>(nodes_.size());
  if (is_access_point(spec.kind)) aps_.push_back(spec.id);
  nodes_.push_back(std::move(spec));
}

void Topology::add_uplink(const std::string& child, const std::string& parent) {
  if (finalized_) throw std::logic_error("topology already finalized");
  if (!index_.count(child) || !index_.count(parent))
    throw ConfigError("uplink references unknown node");
  if (parent_.count(child))
    throw ConfigError("node " + child +
                      " already has an uplink; the graph must be a tree");
  parent_[child] = parent;
}

void Topology::add_site(ProcessingSite site) {
  if (finalized_) throw std::logic_error("topology already finalized");
  if (site_index_.count(site.id))
    throw ConfigError("duplicate site id: " + site.id);
  site_index_[site.id] = static_cast<int>(sites_.size());
  sites_.push_back(std::move(site));
}

void Topology::finalize() {
  if (aps_.empty()) throw ConfigError("topology has no access points");

  // Cycle check plus per-kind wiring pattern along every access chain.
  for (const std::string& ap : aps_) {
    std::string cur = ap;
    std::size_t hops = 0;
    while (true) {
      const std::string& parent = uplink_parent(cur);
      if (parent.empty()) break;
      if (++hops > nodes_.size())
        throw ConfigError("uplink cycle detected near " + cur);
      const NodeKind child_kind = node(cur).kind;
      const NodeKind parent_kind = node(parent).kind;
      const bool ok =
          (is_access_point(child_kind) && parent_kind == NodeKind::Onu) ||
          (child_kind == NodeKind::Onu && parent_kind == NodeKind::Olt) ||
          (child_kind == NodeKind::Olt && parent_kind == NodeKind::MetroSwitch) ||
          (child_kind == NodeKind::MetroSwitch &&
           parent_kind == NodeKind::MetroRouterPort) ||
          (child_kind == NodeKind::MetroRouterPort &&
           parent_kind == NodeKind::CoreNode);
      if (!ok)
        throw ConfigError("uplink " + cur + " -> " + parent +
                          " violates the access/metro/core layering");
      cur = parent;
    }
    if (node(cur).kind != NodeKind::CoreNode)
      throw ConfigError("access point " + ap +
                        " does not reach the core node uplink");
  }

  int olts = 0;
  for (const NodeSpec& spec : nodes_)
    if (spec.kind == NodeKind::Olt) ++olts;
  if (olts != 1) throw ConfigError("expected exactly one OLT");

  for (const ProcessingSite& site : sites_) {
    if (!index_.count(site.server) || !index_.count(site.attach))
      throw ConfigError("site " + site.id + " references unknown nodes");
    if (!is_server(node(site.server).kind))
      throw ConfigError("site " + site.id + " server node has wrong kind");
    for (const std::string& lan : site.lan)
      if (!is_lan_device(node(lan).kind))
        throw ConfigError("site " + site.id + " LAN node has wrong kind");
  }
  bool has_cloud = false;
  for (const ProcessingSite& site : sites_)
    has_cloud |= node(site.server).kind == NodeKind::CloudServer;
  if (!has_cloud) throw ConfigError("topology has no cloud site");

  finalized_ = true;
}

namespace {

void add_site_with_lan(Topology& topo, const std::string& site_id,
                       NodeSpec server, const std::string& attach, double pue,
                       const TopologyConfig& config) {
  auto apply = [&config](NodeSpec spec) {
    auto it = config.overrides.find(spec.kind);
    if (it != config.overrides.end()) {
      const auto& ov = it->second;
      if (ov.max_power_w) spec.max_power_w = *ov.max_power_w;
      if (ov.idle_power_w) spec.idle_power_w = *ov.idle_power_w;
      if (ov.capacity) spec.capacity = *ov.capacity;
      if (ov.max_servers) spec.max_servers = *ov.max_servers;
    }
    return spec;
  };

  server = apply(std::move(server));
  server.id = site_id;
  server.pue = pue;
  topo.add_node(server);

  NodeSpec fsw = apply(catalog_default(NodeKind::FogSwitch));
  fsw.id = site_id + "_fsw";
  fsw.pue = pue;
  topo.add_node(fsw);

  NodeSpec frp = apply(catalog_default(NodeKind::FogRouterPort));
  frp.id = site_id + "_frp";
  frp.pue = pue;
  topo.add_node(frp);

  topo.add_site(ProcessingSite{site_id, site_id, {fsw.id, frp.id}, attach});
}

}  // namespace

Topology build_default_topology(const TopologyConfig& config) {
  if (config.pbs_count < 0 || config.mbs_count < 0)
    throw ConfigError("negative access point count");
  if (config.pbs_count + config.mbs_count == 0)
    throw ConfigError("topology needs at least one access point");
  if (config.pue_pbs_min < 1.0 || config.pue_pbs_max < config.pue_pbs_min)
    throw ConfigError("bad PBS PUE range");
  if (config.pbs_positions_m &&
      static_cast<int>(config.pbs_positions_m->size()) != config.pbs_count)
    throw ConfigError("pbs_positions_m size does not match pbs_count");

  auto apply = [&config](NodeSpec spec) {
    auto it = config.overrides.find(spec.kind);
    if (it != config.overrides.end()) {
      const auto& ov = it->second;
      if (ov.max_power_w) spec.max_power_w = *ov.max_power_w;
      if (ov.idle_power_w) spec.idle_power_w = *ov.idle_power_w;
      if (ov.capacity) spec.capacity = *ov.capacity;
      if (ov.max_servers) spec.max_servers = *ov.max_servers;
    }
    return spec;
  };

  Topology topo;

  // Shared backhaul: one OLT, one metro switch, one metro router port (the
  // redundant ports stay idle and unattributed), one core node.
  for (auto [kind, id] : {std::pair<NodeKind, const char*>{NodeKind::Olt, "olt"},
                          {NodeKind::MetroSwitch, "msw"},
                          {NodeKind::MetroRouterPort, "mrp"},
                          {NodeKind::CoreNode, "cn"}}) {
    NodeSpec spec = apply(catalog_default(kind));
    spec.id = id;
    spec.pue = config.pue_metro;
    topo.add_node(spec);
  }

  std::mt19937_64 rng(config.seed);

  for (int i = 0; i < config.pbs_count; ++i) {
    const std::string id = "pbs" + std::to_string(i + 1);
    const double pue =
        config.pue_pbs_min == config.pue_pbs_max
            ? config.pue_pbs_min
            : uniform_double(rng, config.pue_pbs_min, config.pue_pbs_max);
    Vec2 pos;
    if (config.pbs_positions_m) {
      pos = (*config.pbs_positions_m)[i];
    } else {
      pos = Vec2{config.pbs_first_offset_m + config.pbs_interval_m * (i % 3),
                 config.pbs_first_offset_m + config.pbs_interval_m * (i / 3)};
    }

    NodeSpec pbs = apply(catalog_default(NodeKind::Pbs));
    pbs.id = id;
    pbs.pue = pue;
    pbs.position_m = pos;
    topo.add_node(pbs);

    // The ONU sits in the same street cabinet as its base station.
    NodeSpec onu = apply(catalog_default(NodeKind::Onu));
    onu.id = "onu_" + id;
    onu.pue = pue;
    onu.position_m = pos;
    topo.add_node(onu);
    topo.add_uplink(id, onu.id);
    topo.add_uplink(onu.id, "olt");

    add_site_with_lan(topo, "pico" + std::to_string(i + 1),
                      catalog_default(NodeKind::PicoFogServer), id, pue, config);
  }

  for (int i = 0; i < config.mbs_count; ++i) {
    const std::string id = "mbs" + std::to_string(i + 1);
    NodeSpec mbs = apply(catalog_default(NodeKind::Mbs));
    mbs.id = id;
    mbs.pue = config.pue_metro;
    mbs.position_m = config.mbs_position_m;
    topo.add_node(mbs);

    NodeSpec onu = apply(catalog_default(NodeKind::Onu));
    onu.id = "onu_" + id;
    onu.pue = config.pue_metro;
    onu.position_m = config.mbs_position_m;
    topo.add_node(onu);
    topo.add_uplink(id, onu.id);
    topo.add_uplink(onu.id, "olt");

    add_site_with_lan(topo, "macro" + std::to_string(i + 1),
                      catalog_default(NodeKind::MacroFogServer), id,
                      config.pue_metro, config);
  }

  topo.add_uplink("olt", "msw");
  topo.add_uplink("msw", "mrp");
  topo.add_uplink("mrp", "cn");

  add_site_with_lan(topo, "cloud", catalog_default(NodeKind::CloudServer), "cn",
                    config.pue_cloud, config);

  topo.finalize();
  return topo;
}

std::string describe(const Topology& topology) {
  std::ostringstream out;
  auto fmt = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return std::string(buf);
  };

  out << "nodes:\n";
  for (const NodeSpec& n : topology.nodes()) {
    out << "  " << n.id << "  kind=" << to_string(n.kind)
        << "  max_w=" << fmt(n.max_power_w) << "  idle_w=" << fmt(n.idle_power_w)
        << "  capacity=" << fmt(n.capacity)
        << (is_server(n.kind) ? " MIPS" : " Mbps") << "  pue=" << fmt(n.pue)
        << "  efficiency=" << fmt(efficiency(n))
        << (is_server(n.kind) ? " W/MIPS" : " W/Mbps");
    if (n.position_m)
      out << "  position_m=(" << fmt(n.position_m->x) << ","
          << fmt(n.position_m->y) << ")";
    if (is_server(n.kind)) out << "  max_servers=" << n.max_servers;
    out << "\n";
  }
  out << "uplinks:\n";
  for (const NodeSpec& n : topology.nodes()) {
    const std::string& parent = topology.uplink_parent(n.id);
    if (!parent.empty()) out << "  " << n.id << " -> " << parent << "\n";
  }
  out << "processing sites:\n";
  for (const ProcessingSite& s : topology.sites()) {
    out << "  " << s.id << "  server=" << s.server << "  attach=" << s.attach
        << "  lan=[";
    for (std::size_t i = 0; i < s.lan.size(); ++i)
      out << (i ? "," : "") << s.lan[i];
    out << "]\n";
  }
  return out.str();
}

}  // namespace uavfog
