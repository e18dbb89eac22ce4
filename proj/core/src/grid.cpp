#include "uavfog/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>

#include "uavfog/topology.hpp"

namespace uavfog {

namespace {

constexpr int kOffsets[8][2] = {{-1, -1}, {0, -1}, {1, -1}, {-1, 0},
                                {1, 0},   {-1, 1}, {0, 1},  {1, 1}};

struct DistEntry {
  StepCount steps;
  bool reached = false;
};

bool closer(const StepCount& a, const StepCount& b, double spacing) {
  return a.meters(spacing) < b.meters(spacing);
}

}  // namespace

Grid::Grid(int width, int height, double spacing_m)
    : width_(width), height_(height), spacing_m_(spacing_m) {
  if (width < 1 || height < 1) throw ConfigError("grid dimensions must be >= 1");
  if (spacing_m <= 0.0) throw ConfigError("grid spacing must be positive");
}

std::vector<GridPoint> Grid::neighbors(const GridPoint& p) const {
  std::vector<GridPoint> out;
  out.reserve(8);
  for (const auto& off : kOffsets) {
    GridPoint q{p.col + off[0], p.row + off[1]};
    if (contains(q)) out.push_back(q);
  }
  return out;
}

double euclid(const GridPoint& a, const GridPoint& b, double spacing_m) {
  return spacing_m * std::hypot(double(a.col - b.col), double(a.row - b.row));
}

std::vector<StepCount> shortest_distances(const Grid& grid,
                                          const GridPoint& from) {
  if (!grid.contains(from)) throw ConfigError("shortest_distances: point off grid");
  const double spacing = grid.spacing_m();
  std::vector<DistEntry> dist(grid.size());
  dist[grid.index(from)] = {StepCount{}, true};

  using QueueItem = std::pair<double, int>;  // (meters, row-major index)
  std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<>> queue;
  queue.push({0.0, grid.index(from)});

  std::vector<bool> settled(grid.size(), false);
  while (!queue.empty()) {
    auto [d, idx] = queue.top();
    queue.pop();
    if (settled[idx]) continue;
    settled[idx] = true;
    const GridPoint p = grid.point(idx);
    for (const GridPoint& q : grid.neighbors(p)) {
      const bool diagonal = q.col != p.col && q.row != p.row;
      StepCount cand = dist[idx].steps;
      (diagonal ? cand.diag : cand.straight) += 1;
      const int qi = grid.index(q);
      if (!dist[qi].reached || closer(cand, dist[qi].steps, spacing)) {
        dist[qi] = {cand, true};
        queue.push({cand.meters(spacing), qi});
      }
    }
  }

  std::vector<StepCount> out(grid.size());
  for (int i = 0; i < grid.size(); ++i) out[i] = dist[i].steps;
  return out;
}

PathResult shortest_path(const Grid& grid, const GridPoint& from,
                         const GridPoint& to) {
  if (!grid.contains(from) || !grid.contains(to))
    throw ConfigError("shortest_path: endpoint off grid");

  PathResult result;
  if (from == to) {
    result.points = {from};
    result.length_m = 0.0;
    return result;
  }

  // Distances to the target, then a greedy forward walk that always picks
  // the smallest row-major neighbour still on a shortest path. Step-count
  // equality is exact (sqrt(2) is irrational), so ties are decided purely
  // by point order.
  const std::vector<StepCount> to_target = shortest_distances(grid, to);

  GridPoint cur = from;
  result.points.push_back(cur);
  while (!(cur == to)) {
    const StepCount remaining = to_target[grid.index(cur)];
    GridPoint next{};
    int best_index = -1;
    for (const GridPoint& q : grid.neighbors(cur)) {
      const bool diagonal = q.col != cur.col && q.row != cur.row;
      StepCount via = to_target[grid.index(q)];
      (diagonal ? via.diag : via.straight) += 1;
      if (via == remaining) {
        const int qi = grid.index(q);
        if (best_index < 0 || qi < best_index) {
          best_index = qi;
          next = q;
        }
      }
    }
    if (best_index < 0)
      throw std::logic_error("shortest_path: no descent neighbour");
    const bool diagonal = next.col != cur.col && next.row != cur.row;
    (diagonal ? result.steps.diag : result.steps.straight) += 1;
    cur = next;
    result.points.push_back(cur);
  }
  result.length_m = result.steps.meters(grid.spacing_m());
  return result;
}

std::string trajectory_csv(const Grid& grid, const PathResult& path_s_to_f,
                           const PathResult& path_f_to_d) {
  std::string out = "step,x_m,y_m\n";
  int step = 0;
  auto emit = [&](const GridPoint& p) {
    const Vec2 pos = grid.position_m(p);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%d,%.10g,%.10g\n", step++, pos.x, pos.y);
    out += buf;
  };
  for (const GridPoint& p : path_s_to_f.points) emit(p);
  for (std::size_t i = 1; i < path_f_to_d.points.size(); ++i)
    emit(path_f_to_d.points[i]);
  return out;
}

CoverageSets coverage(const Grid& grid, const Topology& topology,
                      double pbs_radius_m) {
  CoverageSets sets;
  for (const std::string& ap : topology.access_points()) {
    const NodeSpec& spec = topology.node(ap);
    if (!spec.position_m)
      throw ConfigError("access point " + ap + " has no position");
    if (spec.kind == NodeKind::Pbs) {
      std::set<int> disc;
      for (int i = 0; i < grid.size(); ++i) {
        const Vec2 p = grid.position_m(grid.point(i));
        if (distance_m(p, *spec.position_m) <= pbs_radius_m) disc.insert(i);
      }
      if (disc.empty())
        sets.warnings.push_back("PBS " + ap +
                                " covers no grid point and is never selectable");
      sets.all_covered.insert(disc.begin(), disc.end());
      sets.psi.emplace(ap, std::move(disc));
    } else {
      // The macro cell covers the whole region.
      for (int i = 0; i < grid.size(); ++i) {
        sets.mbs_covered.insert(i);
        sets.all_covered.insert(i);
      }
    }
  }
  return sets;
}

}  // namespace uavfog
