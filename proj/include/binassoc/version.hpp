#pragma once

namespace binassoc {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "binassoc";

}  // namespace binassoc
