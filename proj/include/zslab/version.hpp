#pragma once

namespace zslab {

inline constexpr const char* kVersion = "0.1.0";

// Bumped whenever enumeration output or cache layout changes shape; cache
// files carry both this and kVersion and are ignored on mismatch.
inline constexpr int kCacheFormatVersion = 1;

}  // namespace zslab
