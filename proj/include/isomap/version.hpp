#pragma once

namespace isomap {
inline constexpr const char* kVersion = "0.1.0";
}
