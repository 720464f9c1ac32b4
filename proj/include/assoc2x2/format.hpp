#ifndef ASSOC2X2_FORMAT_HPP
#define ASSOC2X2_FORMAT_HPP

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <system_error>

namespace assoc2x2 {

/// Shortest decimal string that parses back to exactly v.
inline std::string format_roundtrip(double v) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

/// Fixed-point with half-away-from-zero rounding; never prints "-0.000".
inline std::string format_fixed(double v, int decimals) {
    const double scale = std::pow(10.0, decimals);
    double r = std::round(v * scale) / scale;
    if (r == 0.0) r = 0.0;
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), "%.*f", decimals, r);
    return std::string(buf.data());
}

/// Parses a full token as a double; false on trailing garbage or empty input.
inline bool parse_double(std::string_view token, double& out) {
    if (token.empty()) return false;
    if (token.front() == '+') token.remove_prefix(1);
    const char* end = token.data() + token.size();
    const auto res = std::from_chars(token.data(), end, out);
    return res.ec == std::errc() && res.ptr == end;
}

} // namespace assoc2x2

#endif // ASSOC2X2_FORMAT_HPP
