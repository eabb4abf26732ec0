#pragma once

#include <array>
#include <charconv>
#include <string>

namespace gcap {

/// Locale-independent decimal formatting with 17 significant digits; every
/// double round-trips through strtod. CSV writers use this exclusively so
/// repeated runs are byte-identical.
inline std::string format_double(double v) {
    std::array<char, 40> buf;
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                   std::chars_format::general, 17);
    return std::string(buf.data(), res.ptr);
}

} // namespace gcap
