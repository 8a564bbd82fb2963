#pragma once

#include <charconv>
#include <locale>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>

#include "error.hpp"

namespace mbfts::fmt {

/// Shortest decimal text that reads back to the identical double.
/// Independent of the global locale.
inline std::string exact(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw IoError("cannot format number");
    return {buf, end};
}

/// Fixed-point rendering with `digits` decimals ("1036.0825").
inline std::string fixed(double v, int digits) {
    char buf[128];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
    if (ec != std::errc{}) throw IoError("cannot format number");
    std::string s(buf, end);
    if (s.starts_with("-") && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

/// Imbues the classic "C" locale on a stream for the guard's lifetime.
class ClassicLocale {
public:
    explicit ClassicLocale(std::ostream& out) : out_(out), saved_(out.imbue(std::locale::classic())) {}
    ~ClassicLocale() { out_.imbue(saved_); }
    ClassicLocale(const ClassicLocale&) = delete;
    ClassicLocale& operator=(const ClassicLocale&) = delete;

private:
    std::ostream& out_;
    std::locale saved_;
};

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

inline bool parse_double(std::string_view s, double& out) {
    s = trim(s);
    if (s.starts_with('+')) s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty();
}

inline bool parse_int(std::string_view s, int& out) {
    s = trim(s);
    if (s.starts_with('+')) s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty();
}

} // namespace mbfts::fmt
