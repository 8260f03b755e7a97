#pragma once

namespace corpkit {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace corpkit
