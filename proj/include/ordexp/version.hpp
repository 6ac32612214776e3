#pragma once

namespace ordexp {
inline constexpr const char* kVersion = "0.1.0";
inline constexpr unsigned long long kDefaultSeed = 20250810ull;
}  // namespace ordexp
