#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "uavfog/common.hpp"

namespace uavfog {

// 1-based lattice coordinate, column first.
struct GridPoint {
  int col = 1;
  int row = 1;

  friend bool operator==(const GridPoint& a, const GridPoint& b) {
    return a.col == b.col && a.row == b.row;
  }
  friend bool operator!=(const GridPoint& a, const GridPoint& b) {
    return !(a == b);
  }
};

// Square waypoint lattice the UAV flies on. Moves are single steps to any of
// the 8 neighbours (horizontal, vertical, diagonal).
class Grid {
 public:
  Grid(int width, int height, double spacing_m);

  int width() const { return width_; }
  int height() const { return height_; }
  double spacing_m() const { return spacing_m_; }
  int size() const { return width_ * height_; }

  bool contains(const GridPoint& p) const {
    return p.col >= 1 && p.col <= width_ && p.row >= 1 && p.row <= height_;
  }

  // Row-major ordinal: points on row 1 first.
  int index(const GridPoint& p) const {
    return (p.row - 1) * width_ + (p.col - 1);
  }
  GridPoint point(int index) const {
    return GridPoint{index % width_ + 1, index / width_ + 1};
  }

  Vec2 position_m(const GridPoint& p) const {
    return Vec2{(p.col - 1) * spacing_m_, (p.row - 1) * spacing_m_};
  }

  std::vector<GridPoint> neighbors(const GridPoint& p) const;

 private:
  int width_;
  int height_;
  double spacing_m_;
};

double euclid(const GridPoint& a, const GridPoint& b, double spacing_m);

// Exact path length bookkeeping: every move is either an axis step or a
// diagonal step, so a length is spacing * (straight + diag * sqrt(2)).
// Keeping the two counts avoids float round-off when comparing paths.
struct StepCount {
  int straight = 0;
  int diag = 0;

  double meters(double spacing_m) const {
    return spacing_m * (straight + diag * 1.4142135623730951);
  }
  friend bool operator==(const StepCount& a, const StepCount& b) {
    return a.straight == b.straight && a.diag == b.diag;
  }
};

struct PathResult {
  std::vector<GridPoint> points;  // from..to inclusive; single point if from==to
  StepCount steps;
  double length_m = 0.0;
};

// Minimum-length path under the 8-neighbour move set. Among equal-length
// paths returns the lexicographically smallest point sequence in row-major
// order, so outputs are stable across runs and platforms.
PathResult shortest_path(const Grid& grid, const GridPoint& from,
                         const GridPoint& to);

// Distances from one source to every grid point (one Dijkstra sweep).
std::vector<StepCount> shortest_distances(const Grid& grid,
                                          const GridPoint& from);

// Flown trajectory as "step,x_m,y_m" rows for plotting. The second leg's
// first point duplicates the first leg's last, so it is emitted once.
std::string trajectory_csv(const Grid& grid, const PathResult& path_s_to_f,
                           const PathResult& path_f_to_d);

class Topology;  // defined in topology.hpp

// psi: per-PBS disc coverage; Psi: MBS coverage (entire grid). Sets hold
// row-major point indices.
struct CoverageSets {
  std::map<std::string, std::set<int>> psi;
  std::set<int> mbs_covered;
  std::set<int> all_covered;  // union of the above
  std::vector<std::string> warnings;
};

// pbs_radius_m is the Wi-Fi cell range of a pico base station.
CoverageSets coverage(const Grid& grid, const Topology& topology,
                      double pbs_radius_m = 25.0);

}  // namespace uavfog
