#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace uavfog {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline double distance_m(const Vec2& a, const Vec2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Raised when an input (config file, node parameters, wiring) violates a
// structural precondition. Message carries the offending field or node id.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a load is placed on equipment that cannot carry it.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Deterministic uniform draw in [lo, hi). Uses the top 53 bits of the
// generator output so results do not depend on the standard library's
// distribution implementation.
template <typename Rng>
double uniform_double(Rng& rng, double lo, double hi) {
  const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

}  // namespace uavfog
