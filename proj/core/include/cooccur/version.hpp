#pragma once

namespace cooccur {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "cooccur";

}  // namespace cooccur
