#pragma once

namespace joinlab {
inline constexpr const char* kVersion = "0.1.0";
}
