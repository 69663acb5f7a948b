#pragma once

namespace fima {
inline constexpr const char* kVersion = "0.1.0";
}
