#pragma once

namespace verlab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace verlab
