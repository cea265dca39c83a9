#pragma once

namespace nslen {

inline constexpr const char* kVersion = "nslen 0.1.0";

} // namespace nslen
