#pragma once

namespace locc {

inline constexpr const char* kToolName = "locc";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace locc
