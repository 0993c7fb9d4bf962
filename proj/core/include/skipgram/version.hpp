#pragma once

namespace skipgram {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace skipgram
