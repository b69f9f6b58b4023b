#pragma once

namespace multinet {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace multinet
