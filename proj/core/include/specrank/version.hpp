#pragma once

namespace specrank {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace specrank
