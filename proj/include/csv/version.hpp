#pragma once

namespace csv {

inline constexpr const char* kVersion = "1.0.0";

// Bumped whenever the set of fields covered by the config hash changes,
// so cached scores from an older schema never collide with new ones.
inline constexpr int kConfigSchemaVersion = 1;

}  // namespace csv
