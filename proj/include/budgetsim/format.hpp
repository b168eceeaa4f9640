#pragma once

// Locale-independent, round-trip-exact double formatting shared by the
// serialization layer and scenario ids.

#include <charconv>
#include <string>

namespace budgetsim {

/// Shortest-of-17-significant-digits decimal form; parses back to the
/// identical double.
[[nodiscard]] inline std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace budgetsim
