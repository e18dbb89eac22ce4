#include "uavfog/lp_export.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "uavfog/version.hpp"

namespace uavfog {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::string(buf);
}

void require_clean_name(const std::string& name) {
  if (name.empty() || name.size() > 255)
    throw ConfigError("variable name out of range: " + name);
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
      throw ConfigError("variable name has invalid characters: " + name);
}

struct Builder {
  LpModel model;

  int var(const std::string& name, VarKind kind) {
    auto it = model.index.find(name);
    if (it != model.index.end()) return it->second;
    require_clean_name(name);
    LpVariable v;
    v.name = name;
    v.kind = kind;
    if (kind == VarKind::binary) {
      v.upper = 1.0;
      v.upper_bounded = true;
    }
    const int id = static_cast<int>(model.variables.size());
    model.variables.push_back(std::move(v));
    model.index.emplace(name, id);
    return id;
  }

  void objective(double coef, int var) {
    if (coef != 0.0) model.objective.push_back({coef, var});
  }

  void row(std::string name, std::vector<LpTerm> terms, RowSense sense,
           double rhs) {
    model.constraints.push_back({std::move(name), std::move(terms), sense, rhs});
  }
};

std::string point_tag(const GridPoint& p) {
  return std::to_string(p.col) + "_" + std::to_string(p.row);
}

std::string arc_tag(const GridPoint& a, const GridPoint& b) {
  return point_tag(a) + "__" + point_tag(b);
}

}  // namespace

int LpModel::find_var(const std::string& name) const {
  auto it = index.find(name);
  return it == index.end() ? -1 : it->second;
}

LpModel build_lp_model(const ProblemInstance& instance) {
  instance.validate();
  if (!(instance.task.bitrate_mbps > 0.0))
    throw ConfigError("LP export needs a positive bitrate: the traffic flow "
                      "constraints degenerate at zero demand");
  if (instance.task.bitrate_mbps < 1.0 ||
      (instance.task.cpu_mips > 0.0 && instance.task.cpu_mips < 1.0))
    throw ConfigError("LP export needs demands of at least one unit: the "
                      "indicator linking rows pin activated loads to >= 1");
  if (instance.convention != TpcConvention::joules)
    throw ConfigError("LP export supports the joules convention only; the "
                      "watts reading is not linear in the flight variables");

  const Grid& grid = instance.grid;
  const Topology& topo = instance.topology;
  const double br = instance.task.bitrate_mbps;
  const double cpu = instance.task.cpu_mips;

  // Big-M per family: the single task bounds every traffic variable by its
  // bitrate and every CPU variable by its demand, so these are the tightest
  // valid constants. They keep the relaxation near-integral and the
  // indicator coupling numerically clean.
  const double m_traffic = std::max(br, 1.0);
  const double m_cpu = std::max(cpu, 1.0);

  Builder b;

  // ---- sets ------------------------------------------------------------
  // Grid arcs (both directions of every neighbour pair).
  std::vector<std::pair<GridPoint, GridPoint>> arcs;
  for (int i = 0; i < grid.size(); ++i) {
    const GridPoint p = grid.point(i);
    for (const GridPoint& q : grid.neighbors(p)) arcs.push_back({p, q});
  }

  auto ap_allowed = [&](NodeKind kind) {
    switch (instance.filter) {
      case OffloadFilter::full: return true;
      case OffloadFilter::limited_to_pbs: return kind == NodeKind::Pbs;
      case OffloadFilter::limited_to_mbs: return kind == NodeKind::Mbs;
    }
    return false;
  };

  // Coverage pairs (f, a): geometry first, offload filter second.
  struct CoverPair {
    int f_index;
    std::string ap;
  };
  std::vector<CoverPair> admissible_pairs;  // respects the filter
  std::vector<CoverPair> coverage_pairs;    // geometry only (for c21)
  for (int fi = 0; fi < grid.size(); ++fi) {
    for (const std::string& ap_id : topo.access_points()) {
      const NodeSpec& ap = topo.node(ap_id);
      const bool covered =
          ap.kind == NodeKind::Mbs
              ? instance.cover.mbs_covered.count(fi) > 0
              : instance.cover.psi.count(ap_id) &&
                    instance.cover.psi.at(ap_id).count(fi) > 0;
      if (!covered) continue;
      coverage_pairs.push_back({fi, ap_id});
      if (ap_allowed(ap.kind)) admissible_pairs.push_back({fi, ap_id});
    }
  }
  if (admissible_pairs.empty())
    throw ConfigError("instance has no admissible offload point");

  // Offload points that can actually carry the task.
  std::vector<int> cp_points;
  for (const CoverPair& pair : admissible_pairs)
    if (cp_points.empty() || cp_points.back() != pair.f_index)
      cp_points.push_back(pair.f_index);

  struct Triple {
    int f_index;
    std::string ap;
    std::string site;
  };
  std::vector<Triple> triples;
  for (const CoverPair& pair : admissible_pairs)
    for (const ProcessingSite& site : topo.sites())
      triples.push_back({pair.f_index, pair.ap, site.id});

  // Physical flow graph: access points, backhaul devices and server nodes.
  std::vector<std::string> flow_nodes;
  for (const NodeSpec& n : topo.nodes())
    if (is_network_device(n.kind) || is_server(n.kind))
      flow_nodes.push_back(n.id);

  std::vector<std::pair<std::string, std::string>> tree_edges;
  for (const NodeSpec& n : topo.nodes()) {
    const std::string& parent = topo.uplink_parent(n.id);
    if (!parent.empty()) tree_edges.push_back({n.id, parent});
  }
  for (const ProcessingSite& site : topo.sites())
    tree_edges.push_back({site.attach, site.server});

  std::vector<std::pair<std::string, std::string>> net_arcs;
  for (const auto& [u, v] : tree_edges) {
    net_arcs.push_back({u, v});
    net_arcs.push_back({v, u});
  }

  auto neighbors_of = [&](const std::string& m) {
    std::vector<std::string> out;
    for (const auto& [u, v] : net_arcs)
      if (u == m) out.push_back(v);
    return out;
  };

  // ---- variables ---------------------------------------------------------
  auto ksf = [&](int fi, const GridPoint& i, const GridPoint& j) {
    return b.var("ksf_f" + point_tag(grid.point(fi)) + "__" + arc_tag(i, j),
                 VarKind::binary);
  };
  auto kfd = [&](int fi, const GridPoint& i, const GridPoint& j) {
    return b.var("kfd_f" + point_tag(grid.point(fi)) + "__" + arc_tag(i, j),
                 VarKind::binary);
  };
  auto kappa = [&](const GridPoint& i, const GridPoint& j) {
    return b.var("k__" + arc_tag(i, j), VarKind::binary);
  };
  auto lam_link = [&](const Triple& t, const std::string& m, const std::string& n) {
    return b.var("lam_f" + point_tag(grid.point(t.f_index)) + "_a_" + t.ap +
                     "_v_" + t.site + "__" + m + "__" + n,
                 VarKind::continuous);
  };
  auto lam_fav = [&](const Triple& t) {
    return b.var("lamfav_f" + point_tag(grid.point(t.f_index)) + "_a_" + t.ap +
                     "_v_" + t.site,
                 VarKind::continuous);
  };
  auto lam_fa = [&](int fi, const std::string& ap) {
    return b.var("lamfa_f" + point_tag(grid.point(fi)) + "_a_" + ap,
                 VarKind::continuous);
  };
  auto lam_node = [&](const std::string& m) {
    return b.var("lamnode_" + m, VarKind::continuous);
  };
  auto p_av = [&](const std::string& ap, const std::string& site) {
    return b.var("p_a_" + ap + "_v_" + site, VarKind::continuous);
  };
  auto ns_v = [&](const std::string& site) {
    return b.var("ns_" + site, VarKind::integer);
  };
  auto b_av = [&](const std::string& ap, const std::string& site) {
    return b.var("bav_a_" + ap + "_v_" + site, VarKind::binary);
  };
  auto b_fav = [&](const Triple& t) {
    return b.var("bfav_f" + point_tag(grid.point(t.f_index)) + "_a_" + t.ap +
                     "_v_" + t.site,
                 VarKind::binary);
  };
  auto b_node = [&](const std::string& m) {
    return b.var("bnode_" + m, VarKind::binary);
  };
  auto b_link = [&](const std::string& m, const std::string& n) {
    return b.var("blink__" + m + "__" + n, VarKind::binary);
  };
  auto q_v = [&](const std::string& site) {
    return b.var("q_" + site, VarKind::binary);
  };

  // ---- objective ---------------------------------------------------------
  const Weights& w = instance.weights;

  // Network power: proportional on the node traffic, idle on activation.
  for (const std::string& id : flow_nodes) {
    const NodeSpec& spec = topo.node(id);
    if (!is_network_device(spec.kind)) continue;
    const double ipr = instance.ipr == IprPolicy::full ? 1.0 : br / spec.capacity;
    b.objective(w.alpha * spec.pue * efficiency(spec), lam_node(id));
    b.objective(w.alpha * spec.pue * spec.idle_power_w * ipr, b_node(id));
  }

  // Processing power: server proportional + server idle + site LAN.
  for (const ProcessingSite& site : topo.sites()) {
    const NodeSpec& server = topo.node(site.server);
    const int ns_needed =
        cpu > 0.0
            ? std::max(1, static_cast<int>(std::ceil(cpu / server.capacity)))
            : 1;
    const double ipr_cpu = instance.ipr == IprPolicy::full
                               ? 1.0
                               : cpu / (server.capacity * ns_needed);
    for (const std::string& ap_id : topo.access_points())
      b.objective(w.beta * server.pue * efficiency(server), p_av(ap_id, site.id));
    b.objective(w.beta * server.pue * server.idle_power_w * ipr_cpu, ns_v(site.id));

    double lan_eff = 0.0, lan_idle = 0.0;
    for (const std::string& lan_id : site.lan) {
      const NodeSpec& lan = topo.node(lan_id);
      const double ipr = instance.ipr == IprPolicy::full ? 1.0 : br / lan.capacity;
      lan_eff += lan.pue * efficiency(lan);
      lan_idle += lan.pue * lan.idle_power_w * ipr;
    }
    b.objective(w.beta * lan_eff, lam_node(site.server));
    b.objective(w.beta * lan_idle, q_v(site.id));
  }

  // Flight distance and flight energy on the union arc indicators.
  const double epm = instance.uav.energy_per_meter_j();
  for (const auto& [i, j] : arcs) {
    const double d = euclid(i, j, grid.spacing_m());
    b.objective(w.gamma * d + w.omega * epm * d, kappa(i, j));
  }

  // Radio energy per offload pair.
  for (const CoverPair& pair : admissible_pairs) {
    const NodeSpec& ap = topo.node(pair.ap);
    const double gain =
        instance.uav.uav_gain * (ap.kind == NodeKind::Mbs ? instance.uav.mbs_gain
                                                          : instance.uav.pbs_gain);
    const double dist =
        distance_m(grid.position_m(grid.point(pair.f_index)), *ap.position_m);
    const double joules_per_mbps =
        (instance.uav.elec_energy_per_bit_j +
         instance.uav.amp_energy_per_bit_m2_j * dist * dist / gain) *
        1e6 * instance.uav.offload_duration_s;
    b.objective(w.omega * joules_per_mbps, lam_fa(pair.f_index, pair.ap));
  }

  if (b.model.objective.empty() && !b.model.variables.empty())
    b.model.objective.push_back({0.0, 0});

  // ---- constraints -------------------------------------------------------
  // UAV flow conservation, start -> offload leg, per candidate offload point.
  for (int fi : cp_points) {
    const GridPoint f = grid.point(fi);
    std::vector<LpTerm> op_f;  // sum of the offload indicators for this f
    for (const Triple& t : triples)
      if (t.f_index == fi) op_f.push_back({1.0, b_fav(t)});

    for (int ii = 0; ii < grid.size(); ++ii) {
      const GridPoint i = grid.point(ii);
      std::vector<LpTerm> terms;
      for (const GridPoint& j : grid.neighbors(i)) {
        terms.push_back({1.0, ksf(fi, i, j)});
        terms.push_back({-1.0, ksf(fi, j, i)});
      }
      const double sigma = (i == instance.start ? 1.0 : 0.0) - (i == f ? 1.0 : 0.0);
      if (sigma != 0.0)
        for (const LpTerm& t : op_f) terms.push_back({-sigma * t.coef, t.var});
      b.row("c06_uavflow_f" + point_tag(f) + "_i" + point_tag(i), std::move(terms),
            RowSense::eq, 0.0);
    }

    for (int ii = 0; ii < grid.size(); ++ii) {
      const GridPoint i = grid.point(ii);
      std::vector<LpTerm> terms;
      for (const GridPoint& j : grid.neighbors(i)) {
        terms.push_back({1.0, kfd(fi, i, j)});
        terms.push_back({-1.0, kfd(fi, j, i)});
      }
      const double sigma = (i == f ? 1.0 : 0.0) - (i == instance.dest ? 1.0 : 0.0);
      if (sigma != 0.0)
        for (const LpTerm& t : op_f) terms.push_back({-sigma * t.coef, t.var});
      b.row("c07_uavflow_f" + point_tag(f) + "_i" + point_tag(i), std::move(terms),
            RowSense::eq, 0.0);
    }
  }

  // Backhaul flow conservation per admissible triple.
  for (const Triple& t : triples) {
    const std::string site_server = topo.site(t.site).server;
    for (const std::string& m : flow_nodes) {
      std::vector<LpTerm> terms;
      for (const std::string& n : neighbors_of(m)) {
        terms.push_back({1.0, lam_link(t, m, n)});
        terms.push_back({-1.0, lam_link(t, n, m)});
      }
      const double sigma = (m == t.ap ? 1.0 : 0.0) - (m == site_server ? 1.0 : 0.0);
      if (sigma != 0.0) terms.push_back({-sigma, lam_fav(t)});
      b.row("c08_netflow_f" + point_tag(grid.point(t.f_index)) + "_a_" + t.ap +
                "_v_" + t.site + "_m_" + m,
            std::move(terms), RowSense::eq, 0.0);
    }
  }

  // Total demand.
  {
    std::vector<LpTerm> terms;
    for (const Triple& t : triples) terms.push_back({1.0, lam_fav(t)});
    b.row("c09_demand", std::move(terms), RowSense::eq, br);
  }

  // CPU demand per (access point, site) pair.
  for (const std::string& ap_id : topo.access_points())
    for (const ProcessingSite& site : topo.sites())
      b.row("c10_cpu_a_" + ap_id + "_v_" + site.id,
            {{1.0, p_av(ap_id, site.id)}, {-cpu, b_av(ap_id, site.id)}},
            RowSense::eq, 0.0);

  // Offload indicator linking.
  for (const Triple& t : triples) {
    const std::string tag = "_f" + point_tag(grid.point(t.f_index)) + "_a_" +
                            t.ap + "_v_" + t.site;
    b.row("c11_lower" + tag, {{1.0, lam_fav(t)}, {-1.0, b_fav(t)}}, RowSense::ge,
          0.0);
    b.row("c12_upper" + tag, {{1.0, lam_fav(t)}, {-m_traffic, b_fav(t)}},
          RowSense::le, 0.0);
  }

  // A single offload point and processing location.
  {
    std::vector<LpTerm> terms;
    for (const Triple& t : triples) terms.push_back({1.0, b_fav(t)});
    b.row("c13_single_offload", std::move(terms), RowSense::le, 1.0);
  }

  // Link activation indicators.
  for (const auto& [m, n] : net_arcs) {
    std::vector<LpTerm> lower, upper;
    for (const Triple& t : triples) lower.push_back({1.0, lam_link(t, m, n)});
    upper = lower;
    lower.push_back({-1.0, b_link(m, n)});
    upper.push_back({-m_traffic, b_link(m, n)});
    b.row("c14_linkact__" + m + "__" + n, std::move(lower), RowSense::ge, 0.0);
    b.row("c15_linkact__" + m + "__" + n, std::move(upper), RowSense::le, 0.0);
  }

  // Node activation indicators.
  for (const std::string& m : flow_nodes) {
    b.row("c16_nodeact_" + m, {{1.0, lam_node(m)}, {-1.0, b_node(m)}},
          RowSense::ge, 0.0);
    b.row("c17_nodeact_" + m, {{1.0, lam_node(m)}, {-m_traffic, b_node(m)}},
          RowSense::le, 0.0);
  }

  // Server counting: capacity * ns covers the placed CPU; pool bound.
  for (const ProcessingSite& site : topo.sites()) {
    const NodeSpec& server = topo.node(site.server);
    std::vector<LpTerm> terms{{server.capacity, ns_v(site.id)}};
    for (const std::string& ap_id : topo.access_points())
      terms.push_back({-1.0, p_av(ap_id, site.id)});
    b.row("c18_servers_" + site.id, std::move(terms), RowSense::ge, 0.0);
    b.row("c19_serverpool_" + site.id, {{1.0, ns_v(site.id)}}, RowSense::le,
          static_cast<double>(server.max_servers));
  }

  // Uplink-only traffic: the OLT never feeds an ONU, and no access point
  // transmits down to a coverage point.
  for (const NodeSpec& n : topo.nodes()) {
    if (n.kind != NodeKind::Onu) continue;
    b.row("c20_uplink_olt__" + n.id, {{1.0, b_link("olt", n.id)}}, RowSense::eq,
          0.0);
  }
  for (const CoverPair& pair : coverage_pairs) {
    b.row("c21_uplink_" + pair.ap + "__f" + point_tag(grid.point(pair.f_index)),
          {{1.0, b_link(pair.ap, "f" + point_tag(grid.point(pair.f_index)))}},
          RowSense::eq, 0.0);
  }

  // Site activation indicators.
  for (const ProcessingSite& site : topo.sites()) {
    std::vector<LpTerm> lower, upper;
    for (const std::string& ap_id : topo.access_points())
      lower.push_back({1.0, p_av(ap_id, site.id)});
    upper = lower;
    lower.push_back({-1.0, q_v(site.id)});
    upper.push_back({-m_cpu, q_v(site.id)});
    b.row("c22_siteact_" + site.id, std::move(lower), RowSense::ge, 0.0);
    b.row("c23_siteact_" + site.id, std::move(upper), RowSense::le, 0.0);
  }

  // Definitional rows: per-pair radio traffic, per-node traffic aggregate,
  // and the (a,v) indicator as the sum of its offload indicators.
  for (const CoverPair& pair : admissible_pairs) {
    std::vector<LpTerm> terms{{1.0, lam_fa(pair.f_index, pair.ap)}};
    for (const Triple& t : triples)
      if (t.f_index == pair.f_index && t.ap == pair.ap)
        terms.push_back({-1.0, lam_fav(t)});
    b.row("cdef_lamfa_f" + point_tag(grid.point(pair.f_index)) + "_a_" + pair.ap,
          std::move(terms), RowSense::eq, 0.0);
  }
  for (const std::string& m : flow_nodes) {
    std::vector<LpTerm> terms{{1.0, lam_node(m)}};
    for (const Triple& t : triples) {
      for (const std::string& n : neighbors_of(m))
        terms.push_back({-1.0, lam_link(t, m, n)});
      if (topo.site(t.site).server == m)
        for (const std::string& n : neighbors_of(m))
          terms.push_back({-1.0, lam_link(t, n, m)});
    }
    b.row("cdef_lamnode_" + m, std::move(terms), RowSense::eq, 0.0);
  }
  for (const std::string& ap_id : topo.access_points()) {
    for (const ProcessingSite& site : topo.sites()) {
      std::vector<LpTerm> terms{{1.0, b_av(ap_id, site.id)}};
      for (const Triple& t : triples)
        if (t.ap == ap_id && t.site == site.id)
          terms.push_back({-1.0, b_fav(t)});
      b.row("cdef_bav_a_" + ap_id + "_v_" + site.id, std::move(terms),
            RowSense::eq, 0.0);
    }
  }

  // Device capacities (the native model rejects overloads, so the exported
  // feasible set must too).
  for (const std::string& m : flow_nodes) {
    const NodeSpec& spec = topo.node(m);
    if (is_network_device(spec.kind))
      b.row("ccap_" + m, {{1.0, lam_node(m)}}, RowSense::le, spec.capacity);
  }
  for (const ProcessingSite& site : topo.sites())
    for (const std::string& lan_id : site.lan)
      b.row("ccap_" + lan_id, {{1.0, lam_node(site.server)}}, RowSense::le,
            topo.node(lan_id).capacity);

  // Link the union arc indicators to the two legs.
  for (const auto& [i, j] : arcs) {
    std::vector<LpTerm> sf{{1.0, kappa(i, j)}};
    std::vector<LpTerm> fd{{1.0, kappa(i, j)}};
    for (int fi : cp_points) {
      sf.push_back({-1.0, ksf(fi, i, j)});
      fd.push_back({-1.0, kfd(fi, i, j)});
    }
    b.row("cdef_karc_sf__" + arc_tag(i, j), std::move(sf), RowSense::ge, 0.0);
    b.row("cdef_karc_fd__" + arc_tag(i, j), std::move(fd), RowSense::ge, 0.0);
  }

  // Gate each leg's arc block on its offload indicator: an unchosen point
  // carries no flight arcs. The flow rows already force this at the optimum;
  // the aggregate lets a solver fix whole blocks during presolve.
  for (int fi : cp_points) {
    const GridPoint f = grid.point(fi);
    std::vector<LpTerm> op_f;
    for (const Triple& t : triples)
      if (t.f_index == fi) op_f.push_back({1.0, b_fav(t)});

    std::vector<LpTerm> sf, fd;
    for (const auto& [i, j] : arcs) {
      sf.push_back({1.0, ksf(fi, i, j)});
      fd.push_back({1.0, kfd(fi, i, j)});
    }
    const double cap = static_cast<double>(arcs.size());
    for (const LpTerm& t : op_f) {
      sf.push_back({-cap * t.coef, t.var});
      fd.push_back({-cap * t.coef, t.var});
    }
    b.row("cdef_leg_gate_sf_f" + point_tag(f), std::move(sf), RowSense::le, 0.0);
    b.row("cdef_leg_gate_fd_f" + point_tag(f), std::move(fd), RowSense::le, 0.0);
  }

  // Header: enough to pin the instance; no timestamps, so the file is
  // reproducible bit for bit.
  b.model.header.push_back("uavfog MILP export v" + std::string(kVersion));
  b.model.header.push_back(
      "grid " + std::to_string(grid.width()) + "x" + std::to_string(grid.height()) +
      " spacing_m " + fmt(grid.spacing_m()) + "  start " +
      point_tag(instance.start) + "  dest " + point_tag(instance.dest));
  b.model.header.push_back(
      "task cpu_mips " + fmt(cpu) + " bitrate_mbps " + fmt(br) + "  weights " +
      fmt(w.alpha) + " " + fmt(w.beta) + " " + fmt(w.gamma) + " " + fmt(w.omega));
  b.model.header.push_back(
      "filter " + std::string(to_string(instance.filter)) + "  ipr " +
      std::string(to_string(instance.ipr)) + "  big_m " + fmt(m_traffic) + "/" +
      fmt(m_cpu));

  return b.model;
}

void write_lp(const LpModel& model, std::ostream& out) {
  for (const std::string& line : model.header) out << "\\ " << line << "\n";

  auto write_terms = [&out](const std::vector<LpTerm>& terms,
                            const std::vector<LpVariable>& vars) {
    int on_line = 0;
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const LpTerm& t = terms[k];
      const double mag = std::fabs(t.coef);
      out << (t.coef < 0.0 ? " - " : (k == 0 ? " " : " + ")) << fmt(mag) << " "
          << vars[t.var].name;
      if (++on_line == 6 && k + 1 < terms.size()) {
        out << "\n   ";
        on_line = 0;
      }
    }
  };

  out << "Minimize\n obj:";
  write_terms(model.objective, model.variables);
  out << "\nSubject To\n";
  for (const LpConstraint& c : model.constraints) {
    out << " " << c.name << ":";
    write_terms(c.terms, model.variables);
    switch (c.sense) {
      case RowSense::le: out << " <= "; break;
      case RowSense::ge: out << " >= "; break;
      case RowSense::eq: out << " = "; break;
    }
    out << fmt(c.rhs) << "\n";
  }

  bool any = false;
  for (const LpVariable& v : model.variables) any |= v.kind == VarKind::integer;
  if (any) {
    out << "Generals\n";
    int on_line = 0;
    for (const LpVariable& v : model.variables) {
      if (v.kind != VarKind::integer) continue;
      out << " " << v.name;
      if (++on_line == 8) {
        out << "\n";
        on_line = 0;
      }
    }
    if (on_line) out << "\n";
  }

  any = false;
  for (const LpVariable& v : model.variables) any |= v.kind == VarKind::binary;
  if (any) {
    out << "Binaries\n";
    int on_line = 0;
    for (const LpVariable& v : model.variables) {
      if (v.kind != VarKind::binary) continue;
      out << " " << v.name;
      if (++on_line == 8) {
        out << "\n";
        on_line = 0;
      }
    }
    if (on_line) out << "\n";
  }
  out << "End\n";
}

std::string write_lp(const LpModel& model) {
  std::ostringstream out;
  write_lp(model, out);
  return out.str();
}

std::map<std::string, double> lp_assignment_from_solution(
    const ProblemInstance& instance, const LpModel& model,
    const Solution& solution) {
  if (!solution.feasible)
    throw ConfigError("cannot translate an infeasible solution");

  const Grid& grid = instance.grid;
  const Topology& topo = instance.topology;
  const LoadAssignment& a = solution.assignment;

  std::map<std::string, double> values;
  for (const LpVariable& v : model.variables) values[v.name] = 0.0;

  auto set = [&](const std::string& name, double value) {
    auto it = values.find(name);
    if (it == values.end())
      throw std::logic_error("assignment references unknown LP variable: " + name);
    it->second = value;
  };

  const std::string f_tag = "f" + point_tag(a.offload);
  const std::string triple = f_tag + "_a_" + a.access_point + "_v_" + a.site;

  set("bfav_" + triple, 1.0);
  set("lamfav_" + triple, a.traffic_mbps);
  set("lamfa_" + f_tag + "_a_" + a.access_point, a.traffic_mbps);
  set("bav_a_" + a.access_point + "_v_" + a.site, 1.0);
  set("p_a_" + a.access_point + "_v_" + a.site, a.cpu_mips);
  set("ns_" + a.site, a.servers_active);
  set("q_" + a.site, a.cpu_mips > 0.0 ? 1.0 : 0.0);

  for (std::size_t k = 0; k + 1 < a.route.size(); ++k) {
    set("lam_" + triple + "__" + a.route[k] + "__" + a.route[k + 1],
        a.traffic_mbps);
    set("blink__" + a.route[k] + "__" + a.route[k + 1], 1.0);
  }
  for (const std::string& node : a.route) {
    set("lamnode_" + node, a.traffic_mbps);
    set("bnode_" + node, a.traffic_mbps > 0.0 ? 1.0 : 0.0);
  }

  auto set_leg = [&](const PathResult& path, const std::string& prefix) {
    for (std::size_t k = 0; k + 1 < path.points.size(); ++k) {
      const std::string arc = arc_tag(path.points[k], path.points[k + 1]);
      set(prefix + f_tag + "__" + arc, 1.0);
      set("k__" + arc, 1.0);
    }
  };
  set_leg(solution.path_s_f, "ksf_");
  set_leg(solution.path_f_d, "kfd_");

  return values;
}

std::vector<std::string> check_lp_assignment(
    const LpModel& model, const std::map<std::string, double>& values,
    double tolerance) {
  std::vector<std::string> violated;
  auto value_of = [&](int var) {
    auto it = values.find(model.variables[var].name);
    return it == values.end() ? 0.0 : it->second;
  };
  for (const LpConstraint& c : model.constraints) {
    double lhs = 0.0;
    for (const LpTerm& t : c.terms) lhs += t.coef * value_of(t.var);
    bool ok = true;
    switch (c.sense) {
      case RowSense::le: ok = lhs <= c.rhs + tolerance; break;
      case RowSense::ge: ok = lhs >= c.rhs - tolerance; break;
      case RowSense::eq: ok = std::fabs(lhs - c.rhs) <= tolerance; break;
    }
    if (!ok)
      violated.push_back(c.name + " (lhs " + fmt(lhs) + ", rhs " + fmt(c.rhs) + ")");
  }
  return violated;
}

double lp_objective_value(const LpModel& model,
                          const std::map<std::string, double>& values) {
  double total = 0.0;
  for (const LpTerm& t : model.objective) {
    auto it = values.find(model.variables[t.var].name);
    if (it != values.end()) total += t.coef * it->second;
  }
  return total;
}

}  // namespace uavfog
