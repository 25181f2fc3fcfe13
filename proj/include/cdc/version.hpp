#pragma once

namespace cdc {
inline constexpr const char* kVersion = "0.1.0";
}
