#pragma once

namespace ovcp {

inline constexpr const char* kVersion = "ovcp 0.1.0";

}  // namespace ovcp
