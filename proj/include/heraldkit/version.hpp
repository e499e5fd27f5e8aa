#pragma once

namespace heraldkit {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace heraldkit
