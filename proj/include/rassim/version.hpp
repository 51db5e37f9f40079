#pragma once

namespace rassim {

inline constexpr const char* kToolName = "rassim";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace rassim
