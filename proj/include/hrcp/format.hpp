#pragma once

#include <charconv>
#include <optional>
#include <string>
#include <string_view>

namespace hrcp {

/// Shortest decimal representation that round-trips to the same double.
inline std::string format_double(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

/// Fixed-precision formatting, used for timing fields only.
inline std::string format_fixed(double value, int precision) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, precision);
    return std::string(buf, res.ptr);
}

/// Parses a full token as a double; nullopt on trailing garbage or failure.
inline std::optional<double> parse_double(std::string_view token) {
    double value = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{} || res.ptr != end) return std::nullopt;
    return value;
}

inline std::optional<long long> parse_int(std::string_view token) {
    long long value = 0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{} || res.ptr != end) return std::nullopt;
    return value;
}

}  // namespace hrcp
