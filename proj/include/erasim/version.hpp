#pragma once

namespace erasim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace erasim
