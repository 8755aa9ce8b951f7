#pragma once

namespace rangerenew {

inline constexpr const char* kVersion = "0.1.0";

} // namespace rangerenew
