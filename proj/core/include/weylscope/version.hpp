#pragma once

namespace weylscope {

inline constexpr const char* kVersion = "weylscope 0.1.0";

} // namespace weylscope
