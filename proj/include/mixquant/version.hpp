#pragma once

namespace mixquant {
inline constexpr const char* kVersion = "0.1.0";
}
