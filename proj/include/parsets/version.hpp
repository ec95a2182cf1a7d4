#pragma once

namespace parsets {

inline constexpr const char* kVersion = "0.1.0";

} // namespace parsets
