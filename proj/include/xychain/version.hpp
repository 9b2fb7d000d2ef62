#pragma once

namespace xychain {
inline constexpr const char* kVersionTag = "1.0.0";
}
