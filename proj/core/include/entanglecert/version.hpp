#pragma once

namespace entanglecert {

inline constexpr const char* version = "1.0.0";

}  // namespace entanglecert
