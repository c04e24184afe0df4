#pragma once

namespace meanref {

inline constexpr const char* version = "0.1.0";

}  // namespace meanref
