#pragma once

namespace interplab {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace interplab
