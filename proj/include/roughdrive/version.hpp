#pragma once

namespace rd {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rd
