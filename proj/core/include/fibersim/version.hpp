#pragma once

namespace fibersim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fibersim
