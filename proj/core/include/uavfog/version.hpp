#pragma once

namespace uavfog {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace uavfog
