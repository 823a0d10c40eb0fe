#pragma once

namespace modlie {

inline constexpr const char* kToolVersion = "0.1.0";

} // namespace modlie
