#pragma once

namespace lfsync {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace lfsync
