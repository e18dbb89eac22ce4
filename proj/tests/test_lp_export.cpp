#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "oracle.hpp"
#include "uavfog/lp_export.hpp"

using namespace uavfog;

namespace {

// 4x4 grid, one PBS on lattice point (2,2), one MBS.
ProblemInstance small_instance() {
  ProblemInstance instance;
  instance.grid = Grid(4, 4, 25.0);
  TopologyConfig config;
  config.seed = 3;
  config.pbs_count = 1;
  config.mbs_count = 1;
  config.pbs_positions_m = std::vector<Vec2>{{25.0, 25.0}};
  config.mbs_position_m = Vec2{37.5, 75.0};
  instance.topology = build_default_topology(config);
  instance.cover = coverage(instance.grid, instance.topology);
  instance.start = {1, 1};
  instance.dest = {4, 2};
  instance.task = TaskDemand{1000.0, 10.0};
  return instance;
}

int count_prefix(const LpModel& model, const std::string& prefix) {
  int n = 0;
  for (const auto& c : model.constraints)
    if (c.name.rfind(prefix, 0) == 0) ++n;
  return n;
}

}  // namespace

TEST_CASE("constraint families have the closed-form counts") {
  const ProblemInstance instance = small_instance();
  const LpModel model = build_lp_model(instance);

  const int gp = 16;
  // 4x4 grid arcs: 2*(3*4*2 + 3*3*2) = 84.
  const int arcs = 84;
  const int cp = 16;                    // the MBS covers every point
  const int psi = 5;                    // PBS disc: centre + 4 orthogonal
  const int pairs = cp + psi;           // (f, a) coverage pairs
  const int sites = 3;                  // pico, macro, cloud
  const int triples = pairs * sites;
  const int aps = 2;
  // Flow nodes: 2 APs + 2 ONUs + OLT + MSW + MRP + CN + 3 servers.
  const int flow_nodes = 11;
  // Tree edges: ap-onu x2, onu-olt x2, olt-msw, msw-mrp, mrp-cn, site x3.
  const int net_arcs = 2 * 10;

  CHECK(count_prefix(model, "c06_") == cp * gp);
  CHECK(count_prefix(model, "c07_") == cp * gp);
  CHECK(count_prefix(model, "c08_") == triples * flow_nodes);
  CHECK(count_prefix(model, "c09_") == 1);
  CHECK(count_prefix(model, "c10_") == aps * sites);
  CHECK(count_prefix(model, "c11_") == triples);
  CHECK(count_prefix(model, "c12_") == triples);
  CHECK(count_prefix(model, "c13_") == 1);
  CHECK(count_prefix(model, "c14_") == net_arcs);
  CHECK(count_prefix(model, "c15_") == net_arcs);
  CHECK(count_prefix(model, "c16_") == flow_nodes);
  CHECK(count_prefix(model, "c17_") == flow_nodes);
  CHECK(count_prefix(model, "c18_") == sites);
  CHECK(count_prefix(model, "c19_") == sites);
  CHECK(count_prefix(model, "c20_") == 2);  // one per ONU
  CHECK(count_prefix(model, "c21_") == pairs);
  CHECK(count_prefix(model, "c22_") == sites);
  CHECK(count_prefix(model, "c23_") == sites);

  // One union-arc indicator and two per-leg binaries per candidate arc.
  int ksf = 0, kfd = 0, k = 0;
  for (const auto& v : model.variables) {
    if (v.name.rfind("ksf_", 0) == 0) ++ksf;
    if (v.name.rfind("kfd_", 0) == 0) ++kfd;
    if (v.name.rfind("k__", 0) == 0) ++k;
  }
  CHECK(k == arcs);
  CHECK(ksf == cp * arcs);
  CHECK(kfd == cp * arcs);
}

TEST_CASE("variable names are unique and well-formed") {
  const LpModel model = build_lp_model(small_instance());
  std::set<std::string> names;
  for (const auto& v : model.variables) {
    CHECK(names.insert(v.name).second);
    CHECK(v.name.size() <= 255);
    for (char c : v.name) {
      const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '_';
      CHECK(ok);
    }
  }
}

TEST_CASE("all-zero weights produce an all-zero objective row") {
  ProblemInstance instance = small_instance();
  instance.weights = {0.0, 0.0, 0.0, 0.0};
  const LpModel model = build_lp_model(instance);
  double magnitude = 0.0;
  for (const auto& t : model.objective) magnitude += std::fabs(t.coef);
  CHECK(magnitude == 0.0);
}

TEST_CASE("node ids outside the variable name scheme are rejected") {
  ProblemInstance instance = small_instance();
  Topology bad;
  NodeSpec pbs = catalog_default(NodeKind::Pbs);
  pbs.id = "pbs one";  // whitespace cannot appear in LP variable names
  pbs.position_m = Vec2{25.0, 25.0};
  bad.add_node(pbs);
  NodeSpec onu = catalog_default(NodeKind::Onu);
  onu.id = "onu1";
  bad.add_node(onu);
  NodeSpec olt = catalog_default(NodeKind::Olt);
  olt.id = "olt";
  bad.add_node(olt);
  NodeSpec msw = catalog_default(NodeKind::MetroSwitch);
  msw.id = "msw";
  bad.add_node(msw);
  NodeSpec mrp = catalog_default(NodeKind::MetroRouterPort);
  mrp.id = "mrp";
  bad.add_node(mrp);
  NodeSpec cn = catalog_default(NodeKind::CoreNode);
  cn.id = "cn";
  bad.add_node(cn);
  NodeSpec cloud = catalog_default(NodeKind::CloudServer);
  cloud.id = "cloud";
  bad.add_node(cloud);
  bad.add_uplink("pbs one", "onu1");
  bad.add_uplink("onu1", "olt");
  bad.add_uplink("olt", "msw");
  bad.add_uplink("msw", "mrp");
  bad.add_uplink("mrp", "cn");
  bad.add_site(ProcessingSite{"cloud", "cloud", {}, "cn"});
  bad.finalize();
  instance.topology = bad;
  instance.cover = coverage(instance.grid, instance.topology);
  CHECK_THROWS_WITH_AS(build_lp_model(instance),
                       doctest::Contains("invalid characters"), ConfigError);
}

TEST_CASE("export is rejected for degenerate demands and conventions") {
  ProblemInstance instance = small_instance();
  instance.task.bitrate_mbps = 0.0;
  CHECK_THROWS_AS(build_lp_model(instance), ConfigError);

  instance = small_instance();
  instance.task.bitrate_mbps = 0.5;  // below the unit indicator bound
  CHECK_THROWS_AS(build_lp_model(instance), ConfigError);

  instance = small_instance();
  instance.convention = TpcConvention::watts;
  CHECK_THROWS_AS(build_lp_model(instance), ConfigError);
}

TEST_CASE("the native solution satisfies every exported constraint") {
  std::mt19937_64 rng(555);
  int checked = 0;
  for (int trial = 0; trial < 25; ++trial) {
    ProblemInstance instance = oracle::random_instance(rng);
    // The indicator rows pin activated loads to at least one traffic unit.
    if (instance.task.bitrate_mbps < 1.0) instance.task.bitrate_mbps = 1.0;
    const Solution sol = solve(instance);
    if (!sol.feasible) continue;
    const LpModel model = build_lp_model(instance);
    const auto values = lp_assignment_from_solution(instance, model, sol);
    const auto violated = check_lp_assignment(model, values);
    if (!violated.empty()) {
      CAPTURE(violated[0]);
      CHECK(violated.empty());
    }
    CHECK(lp_objective_value(model, values) ==
          doctest::Approx(sol.objective).epsilon(1e-9));
    ++checked;
  }
  CHECK(checked >= 15);
}

TEST_CASE("LP text is deterministic and carries the version header") {
  const ProblemInstance instance = small_instance();
  const std::string once = write_lp(build_lp_model(instance));
  const std::string twice = write_lp(build_lp_model(instance));
  CHECK(once == twice);
  CHECK(once.rfind("\\ uavfog MILP export v", 0) == 0);
  CHECK(once.find("Minimize") != std::string::npos);
  CHECK(once.find("Subject To") != std::string::npos);
  CHECK(once.find("Binaries") != std::string::npos);
  CHECK(once.find("End") != std::string::npos);
  CHECK(once.find("c13_single_offload") != std::string::npos);
}

TEST_CASE("per-offload-point flow rows reference the offload indicators") {
  const ProblemInstance instance = small_instance();
  const LpModel model = build_lp_model(instance);
  // The start-row of some candidate f must couple kappa terms with b_fav.
  bool coupled = false;
  for (const auto& c : model.constraints) {
    if (c.name.rfind("c06_", 0) != 0) continue;
    bool has_kappa = false, has_bfav = false;
    for (const auto& t : c.terms) {
      const std::string& n = model.variables[t.var].name;
      has_kappa |= n.rfind("ksf_", 0) == 0;
      has_bfav |= n.rfind("bfav_", 0) == 0;
    }
    coupled |= has_kappa && has_bfav;
  }
  CHECK(coupled);
}
