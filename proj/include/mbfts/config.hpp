#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "csv.hpp"
#include "error.hpp"
#include "format.hpp"
#include "fuzzify.hpp"
#include "model.hpp"

namespace mbfts {

/// Every tunable of a run.  Defaults reproduce the published Belgium setup:
/// universe [900, 1700], four base intervals refined into 1, 6, 13 and 9
/// subintervals, third-order relationships.
struct RunConfig {
    double universe_lo = 900.0;
    double universe_hi = 1700.0;
    int base_interval_count = 4;
    std::vector<int> subdivision_counts{1, 6, 13, 9};
    int order_k = 3;
    BoundaryMode boundary_mode = BoundaryMode::strict;
    Fallback fallback = Fallback::persist;
    SeriesDirection series_direction = SeriesDirection::ascending;

    Universe universe() const { return {universe_lo, universe_hi}; }

    void validate() const {
        if (!(universe_lo < universe_hi))
            throw InvalidArgument("config: universe_lo must be below universe_hi");
        if (base_interval_count < 1) throw InvalidArgument("config: base_interval_count must be >= 1");
        if (static_cast<int>(subdivision_counts.size()) != base_interval_count)
            throw InvalidArgument("config: subdivision_counts has " +
                                  std::to_string(subdivision_counts.size()) + " entries, expected " +
                                  std::to_string(base_interval_count));
        for (int c : subdivision_counts)
            if (c < 1) throw InvalidArgument("config: subdivision counts must be >= 1");
        if (order_k < 1) throw InvalidArgument("config: order_k must be >= 1");
    }

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

namespace detail {

inline std::string_view name(BoundaryMode m) { return m == BoundaryMode::strict ? "strict" : "clamp"; }
inline std::string_view name(Fallback f) { return f == Fallback::persist ? "persist" : "error"; }
inline std::string_view name(SeriesDirection d) {
    return d == SeriesDirection::ascending ? "ascending" : "paper-listing-descending";
}

inline int config_int(std::string_view key, std::string_view v) {
    int out;
    if (!fmt::parse_int(v, out)) throw ParseError("config: '" + std::string(key) + "' expects an integer");
    return out;
}

inline double config_real(std::string_view key, std::string_view v) {
    double out;
    if (!fmt::parse_double(v, out)) throw ParseError("config: '" + std::string(key) + "' expects a number");
    return out;
}

} // namespace detail

/// Applies one `key = value` setting.  Unknown keys are errors.
inline void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
    key = fmt::trim(key);
    value = fmt::trim(value);
    if (key == "universe_lo") {
        cfg.universe_lo = detail::config_real(key, value);
    } else if (key == "universe_hi") {
        cfg.universe_hi = detail::config_real(key, value);
    } else if (key == "base_interval_count") {
        cfg.base_interval_count = detail::config_int(key, value);
    } else if (key == "subdivision_counts") {
        cfg.subdivision_counts.clear();
        for (const auto& f : csv::detail::split(value))
            cfg.subdivision_counts.push_back(detail::config_int(key, f));
    } else if (key == "order_k") {
        cfg.order_k = detail::config_int(key, value);
    } else if (key == "boundary_mode") {
        if (value == "strict") cfg.boundary_mode = BoundaryMode::strict;
        else if (value == "clamp") cfg.boundary_mode = BoundaryMode::clamp;
        else throw ParseError("config: boundary_mode must be strict or clamp");
    } else if (key == "fallback") {
        if (value == "persist") cfg.fallback = Fallback::persist;
        else if (value == "error") cfg.fallback = Fallback::error;
        else throw ParseError("config: fallback must be persist or error");
    } else if (key == "series_direction") {
        if (value == "ascending") cfg.series_direction = SeriesDirection::ascending;
        else if (value == "paper-listing-descending" || value == "descending")
            cfg.series_direction = SeriesDirection::descending;
        else throw ParseError("config: series_direction must be ascending or paper-listing-descending");
    } else {
        throw ParseError("config: unknown key '" + std::string(key) + "'");
    }
}

/// Applies a `key=value` override as given on the command line.
inline void apply_override(RunConfig& cfg, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) throw UsageError("override '" + std::string(assignment) + "' is not key=value");
    try {
        apply_setting(cfg, assignment.substr(0, eq), assignment.substr(eq + 1));
    } catch (const ParseError& e) {
        throw UsageError(e.what());
    }
}

/// Reads `identifier = value` lines on top of `base`.  `#` starts a comment.
inline RunConfig read_config(std::istream& in, RunConfig base = {}) {
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (fmt::trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("config line " + std::to_string(number) + ": expected 'key = value'");
        try {
            apply_setting(base, std::string_view(line).substr(0, eq), std::string_view(line).substr(eq + 1));
        } catch (const ParseError& e) {
            throw ParseError("config line " + std::to_string(number) + ": " + e.what());
        }
    }
    return base;
}

inline void write_config(const RunConfig& cfg, std::ostream& out) {
    fmt::ClassicLocale classic(out);
    out << "universe_lo = " << fmt::exact(cfg.universe_lo) << '\n'
        << "universe_hi = " << fmt::exact(cfg.universe_hi) << '\n'
        << "base_interval_count = " << cfg.base_interval_count << '\n'
        << "subdivision_counts = ";
    for (std::size_t i = 0; i < cfg.subdivision_counts.size(); ++i)
        out << (i ? "," : "") << cfg.subdivision_counts[i];
    out << '\n'
        << "order_k = " << cfg.order_k << '\n'
        << "boundary_mode = " << detail::name(cfg.boundary_mode) << '\n'
        << "fallback = " << detail::name(cfg.fallback) << '\n'
        << "series_direction = " << detail::name(cfg.series_direction) << '\n';
    if (!out) throw IoError("write failure");
}

} // namespace mbfts
