#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace skillaudit::detail {

/// Round to one decimal place. Report scores are quantized with this before
/// serialization so canonical JSON renders them with a single decimal and
/// round-trips exactly.
inline double quantize_score(double x) {
    return std::round(x * 10.0) / 10.0;
}

/// One-decimal fixed rendering: 74 -> "74.0".
inline std::string format_score(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.1f", x);
    std::string s(buf);
    if (s == "-0.0") s = "0.0";
    return s;
}

/// Nine significant digits, used for statistics in study tables.
inline std::string format_stat(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    std::string s(buf);
    if (s == "-0") s = "0";
    return s;
}

}  // namespace skillaudit::detail
