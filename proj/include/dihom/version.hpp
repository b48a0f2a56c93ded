#pragma once

namespace dihom {

inline constexpr const char* tool_name = "dihom";
inline constexpr const char* tool_version = "0.1.0";

}
