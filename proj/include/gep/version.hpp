#pragma once

namespace gep {
inline constexpr const char* kVersion = "0.1.0";
}
