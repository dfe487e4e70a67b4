#pragma once

namespace hh {

inline constexpr const char* kToolVersion = "0.1.0";

} // namespace hh
