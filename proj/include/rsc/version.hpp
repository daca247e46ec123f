#pragma once

namespace rsc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rsc
