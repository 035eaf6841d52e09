#pragma once

namespace spinlogic {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace spinlogic
