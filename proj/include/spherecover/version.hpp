#pragma once

namespace spherecover {

inline constexpr char kVersion[] = "0.1.0";

}  // namespace spherecover
