#include <fstream>
#include <sstream>

#include <json.hpp>

#include "uavfog/serialize.hpp"

namespace uavfog {

using nlohmann::json;

namespace {

// Field access with config-file diagnostics: every error names the full
// field path that caused it.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object())
      throw ConfigError("config: '" + path_ + "' must be an object");
  }

  void allow(std::initializer_list<const char*> keys) {
    for (const auto& [key, value] : j_.items()) {
      bool known = false;
      for (const char* k : keys) known |= key == k;
      if (!known)
        throw ConfigError("config: unknown field '" + path_ + "." + key + "'");
    }
  }

  bool has(const char* key) const { return j_.contains(key); }

  double number(const char* key, double fallback) const {
    if (!j_.contains(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_number())
      throw ConfigError("config: '" + path_ + "." + key + "' must be a number");
    return v.get<double>();
  }

  int integer(const char* key, int fallback) const {
    if (!j_.contains(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_number_integer())
      throw ConfigError("config: '" + path_ + "." + key + "' must be an integer");
    return v.get<int>();
  }

  std::string text(const char* key, const std::string& fallback) const {
    if (!j_.contains(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_string())
      throw ConfigError("config: '" + path_ + "." + key + "' must be a string");
    return v.get<std::string>();
  }

  const json& raw(const char* key) const { return j_.at(key); }
  const json& raw() const { return j_; }
  const std::string& path() const { return path_; }

 private:
  const json& j_;
  std::string path_;
};

Vec2 vec2_from(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw ConfigError("config: '" + path + "' must be [x, y]");
  return Vec2{v[0].get<double>(), v[1].get<double>()};
}

GridPoint point_from(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
      !v[1].is_number_integer())
    throw ConfigError("config: '" + path + "' must be [col, row]");
  return GridPoint{v[0].get<int>(), v[1].get<int>()};
}

NodeKind kind_from(const std::string& name, const std::string& path) {
  for (NodeKind kind :
       {NodeKind::Pbs, NodeKind::Mbs, NodeKind::Onu, NodeKind::Olt,
        NodeKind::MetroSwitch, NodeKind::MetroRouterPort, NodeKind::CoreNode,
        NodeKind::PicoFogServer, NodeKind::MacroFogServer, NodeKind::CloudServer,
        NodeKind::FogSwitch, NodeKind::FogRouterPort})
    if (name == to_string(kind)) return kind;
  throw ConfigError("config: '" + path + "': unknown device kind '" + name + "'");
}

void read_topology(const json& j, TopologyConfig* out) {
  Reader r(j, "topology");
  r.allow({"pbs_count", "mbs_count", "pbs_positions_m", "mbs_position_m",
           "pbs_first_offset_m", "pbs_interval_m", "pue", "devices"});
  out->pbs_count = r.integer("pbs_count", out->pbs_count);
  out->mbs_count = r.integer("mbs_count", out->mbs_count);
  out->pbs_first_offset_m = r.number("pbs_first_offset_m", out->pbs_first_offset_m);
  out->pbs_interval_m = r.number("pbs_interval_m", out->pbs_interval_m);
  if (r.has("mbs_position_m"))
    out->mbs_position_m = vec2_from(r.raw("mbs_position_m"), "topology.mbs_position_m");
  if (r.has("pbs_positions_m")) {
    const json& arr = r.raw("pbs_positions_m");
    if (!arr.is_array())
      throw ConfigError("config: 'topology.pbs_positions_m' must be an array");
    std::vector<Vec2> positions;
    for (std::size_t i = 0; i < arr.size(); ++i)
      positions.push_back(vec2_from(arr[i], "topology.pbs_positions_m[" +
                                                std::to_string(i) + "]"));
    out->pbs_positions_m = std::move(positions);
  }
  if (r.has("pue")) {
    Reader p(r.raw("pue"), "topology.pue");
    p.allow({"cloud", "metro", "pbs_min", "pbs_max"});
    out->pue_cloud = p.number("cloud", out->pue_cloud);
    out->pue_metro = p.number("metro", out->pue_metro);
    out->pue_pbs_min = p.number("pbs_min", out->pue_pbs_min);
    out->pue_pbs_max = p.number("pbs_max", out->pue_pbs_max);
  }
  if (r.has("devices")) {
    const json& devices = r.raw("devices");
    if (!devices.is_object())
      throw ConfigError("config: 'topology.devices' must be an object");
    for (const auto& [name, obj] : devices.items()) {
      const NodeKind kind = kind_from(name, "topology.devices");
      Reader d(obj, "topology.devices." + name);
      d.allow({"max_power_w", "idle_power_w", "capacity", "max_servers"});
      TopologyConfig::DeviceParams params;
      if (d.has("max_power_w")) params.max_power_w = d.number("max_power_w", 0);
      if (d.has("idle_power_w")) params.idle_power_w = d.number("idle_power_w", 0);
      if (d.has("capacity")) params.capacity = d.number("capacity", 0);
      if (d.has("max_servers")) params.max_servers = d.integer("max_servers", 0);
      out->overrides[kind] = params;
    }
  }
}

OffloadFilter filter_from(const std::string& name) {
  if (name == "full") return OffloadFilter::full;
  if (name == "limited_to_pbs") return OffloadFilter::limited_to_pbs;
  if (name == "limited_to_mbs") return OffloadFilter::limited_to_mbs;
  throw ConfigError("config: unknown offload_filter '" + name + "'");
}

}  // namespace

ScenarioConfig config_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }

  ScenarioConfig config;
  Reader r(j, "<root>");
  r.allow({"seed", "topology", "grid", "task", "uav", "weights", "start", "dest",
           "offload_filter", "ipr_policy", "uavtpc_convention", "priority_weight",
           "test_case_two"});

  config.topology.seed =
      static_cast<std::uint64_t>(r.number("seed", double(config.topology.seed)));
  if (r.has("topology")) read_topology(r.raw("topology"), &config.topology);

  if (r.has("grid")) {
    Reader g(r.raw("grid"), "grid");
    g.allow({"width", "height", "spacing_m", "pbs_coverage_radius_m"});
    config.grid_width = g.integer("width", config.grid_width);
    config.grid_height = g.integer("height", config.grid_height);
    config.grid_spacing_m = g.number("spacing_m", config.grid_spacing_m);
    config.pbs_coverage_radius_m =
        g.number("pbs_coverage_radius_m", config.pbs_coverage_radius_m);
  }
  if (r.has("task")) {
    Reader t(r.raw("task"), "task");
    t.allow({"cpu_mips", "bitrate_mbps"});
    config.task.cpu_mips = t.number("cpu_mips", config.task.cpu_mips);
    config.task.bitrate_mbps = t.number("bitrate_mbps", config.task.bitrate_mbps);
  }
  if (r.has("uav")) {
    Reader u(r.raw("uav"), "uav");
    u.allow({"battery_j", "max_flight_m", "max_flight_time_s", "upe",
             "elec_energy_per_bit_j", "amp_energy_per_bit_m2_j", "uav_gain",
             "pbs_gain", "mbs_gain", "offload_duration_s"});
    UavParams& p = config.uav;
    p.battery_j = u.number("battery_j", p.battery_j);
    p.max_flight_m = u.number("max_flight_m", p.max_flight_m);
    p.max_flight_time_s = u.number("max_flight_time_s", p.max_flight_time_s);
    p.upe = u.number("upe", p.upe);
    p.elec_energy_per_bit_j = u.number("elec_energy_per_bit_j", p.elec_energy_per_bit_j);
    p.amp_energy_per_bit_m2_j =
        u.number("amp_energy_per_bit_m2_j", p.amp_energy_per_bit_m2_j);
    p.uav_gain = u.number("uav_gain", p.uav_gain);
    p.pbs_gain = u.number("pbs_gain", p.pbs_gain);
    p.mbs_gain = u.number("mbs_gain", p.mbs_gain);
    p.offload_duration_s = u.number("offload_duration_s", p.offload_duration_s);
  }
  if (r.has("weights")) {
    Reader w(r.raw("weights"), "weights");
    w.allow({"alpha", "beta", "gamma", "omega"});
    config.weights.alpha = w.number("alpha", config.weights.alpha);
    config.weights.beta = w.number("beta", config.weights.beta);
    config.weights.gamma = w.number("gamma", config.weights.gamma);
    config.weights.omega = w.number("omega", config.weights.omega);
  }
  if (r.has("start")) config.start = point_from(r.raw("start"), "start");
  if (r.has("dest")) config.dest = point_from(r.raw("dest"), "dest");
  config.filter = filter_from(r.text("offload_filter", "full"));

  const std::string ipr = r.text("ipr_policy", "proportional");
  if (ipr == "proportional") config.ipr = IprPolicy::proportional;
  else if (ipr == "full") config.ipr = IprPolicy::full;
  else throw ConfigError("config: unknown ipr_policy '" + ipr + "'");

  const std::string conv = r.text("uavtpc_convention", "joules");
  if (conv == "joules") config.convention = TpcConvention::joules;
  else if (conv == "watts") config.convention = TpcConvention::watts;
  else throw ConfigError("config: unknown uavtpc_convention '" + conv + "'");

  config.priority_weight = r.number("priority_weight", config.priority_weight);

  if (r.has("test_case_two")) {
    Reader t(r.raw("test_case_two"), "test_case_two");
    t.allow({"distant_pbs_position_m"});
    if (t.has("distant_pbs_position_m"))
      config.distant_pbs_position_m = vec2_from(
          t.raw("distant_pbs_position_m"), "test_case_two.distant_pbs_position_m");
  }
  return config;
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return config_from_json_text(text.str());
}

std::string config_to_json_text(const ScenarioConfig& config) {
  json j;
  j["seed"] = config.topology.seed;

  json topo;
  topo["pbs_count"] = config.topology.pbs_count;
  topo["mbs_count"] = config.topology.mbs_count;
  topo["pbs_first_offset_m"] = config.topology.pbs_first_offset_m;
  topo["pbs_interval_m"] = config.topology.pbs_interval_m;
  topo["mbs_position_m"] = {config.topology.mbs_position_m.x,
                            config.topology.mbs_position_m.y};
  if (config.topology.pbs_positions_m) {
    json arr = json::array();
    for (const Vec2& v : *config.topology.pbs_positions_m)
      arr.push_back({v.x, v.y});
    topo["pbs_positions_m"] = arr;
  }
  topo["pue"] = {{"cloud", config.topology.pue_cloud},
                 {"metro", config.topology.pue_metro},
                 {"pbs_min", config.topology.pue_pbs_min},
                 {"pbs_max", config.topology.pue_pbs_max}};
  if (!config.topology.overrides.empty()) {
    json devices;
    for (const auto& [kind, params] : config.topology.overrides) {
      json d;
      if (params.max_power_w) d["max_power_w"] = *params.max_power_w;
      if (params.idle_power_w) d["idle_power_w"] = *params.idle_power_w;
      if (params.capacity) d["capacity"] = *params.capacity;
      if (params.max_servers) d["max_servers"] = *params.max_servers;
      devices[to_string(kind)] = d;
    }
    topo["devices"] = devices;
  }
  j["topology"] = topo;

  j["grid"] = {{"width", config.grid_width},
               {"height", config.grid_height},
               {"spacing_m", config.grid_spacing_m},
               {"pbs_coverage_radius_m", config.pbs_coverage_radius_m}};
  j["task"] = {{"cpu_mips", config.task.cpu_mips},
               {"bitrate_mbps", config.task.bitrate_mbps}};
  j["uav"] = {{"battery_j", config.uav.battery_j},
              {"max_flight_m", config.uav.max_flight_m},
              {"max_flight_time_s", config.uav.max_flight_time_s},
              {"upe", config.uav.upe},
              {"elec_energy_per_bit_j", config.uav.elec_energy_per_bit_j},
              {"amp_energy_per_bit_m2_j", config.uav.amp_energy_per_bit_m2_j},
              {"uav_gain", config.uav.uav_gain},
              {"pbs_gain", config.uav.pbs_gain},
              {"mbs_gain", config.uav.mbs_gain},
              {"offload_duration_s", config.uav.offload_duration_s}};
  j["weights"] = {{"alpha", config.weights.alpha},
                  {"beta", config.weights.beta},
                  {"gamma", config.weights.gamma},
                  {"omega", config.weights.omega}};
  j["start"] = {config.start.col, config.start.row};
  j["dest"] = {config.dest.col, config.dest.row};
  j["offload_filter"] = to_string(config.filter);
  j["ipr_policy"] = to_string(config.ipr);
  j["uavtpc_convention"] = to_string(config.convention);
  j["priority_weight"] = config.priority_weight;
  j["test_case_two"] = {{"distant_pbs_position_m",
                         {config.distant_pbs_position_m.x,
                          config.distant_pbs_position_m.y}}};
  return j.dump(2) + "\n";
}

ProblemInstance make_instance(const ScenarioConfig& config) {
  ProblemInstance instance;
  instance.topology = build_default_topology(config.topology);
  instance.grid = Grid(config.grid_width, config.grid_height, config.grid_spacing_m);
  instance.cover =
      coverage(instance.grid, instance.topology, config.pbs_coverage_radius_m);
  instance.task = config.task;
  instance.uav = config.uav;
  instance.weights = config.weights;
  instance.start = config.start;
  instance.dest = config.dest;
  instance.filter = config.filter;
  instance.ipr = config.ipr;
  instance.convention = config.convention;
  instance.priority_weight = config.priority_weight;
  instance.validate();
  return instance;
}

}  // namespace uavfog
