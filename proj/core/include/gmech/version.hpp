#pragma once

namespace gmech {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "gmech";

}  // namespace gmech
