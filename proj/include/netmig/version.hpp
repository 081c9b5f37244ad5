#pragma once

namespace netmig {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace netmig
