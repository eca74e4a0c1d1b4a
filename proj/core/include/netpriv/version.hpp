#pragma once

namespace netpriv {
inline constexpr const char* kVersion = "0.1.0";
}
