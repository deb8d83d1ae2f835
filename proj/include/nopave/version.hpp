#pragma once

namespace nopave {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace nopave
