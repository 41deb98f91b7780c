#pragma once

namespace rwl1 {

inline constexpr const char* kVersion = "0.1.0";

} // namespace rwl1
