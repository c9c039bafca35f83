#pragma once

namespace gpd {

inline constexpr const char* version = "0.1.0";

}  // namespace gpd
