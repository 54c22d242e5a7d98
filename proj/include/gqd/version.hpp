#pragma once

namespace gqd {
inline constexpr const char* kVersion = "0.1.0";
}
