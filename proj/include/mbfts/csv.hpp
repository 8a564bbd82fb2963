#pragma once

#include <algorithm>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "format.hpp"
#include "fuzzify.hpp"
#include "metrics.hpp"
#include "model.hpp"
#include "partition.hpp"
#include "series.hpp"

// Plain-text formats: series, partition, fuzzified series, model listing,
// evaluation and comparison reports.  Numbers never depend on the locale.

namespace mbfts::csv {

namespace detail {

// Splits one CSV record; double quotes group a field and "" escapes a quote.
inline std::vector<std::string> split(std::string_view line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    for (auto& f : fields) f = std::string(fmt::trim(f));
    return fields;
}

inline std::string strip_thousands(std::string_view s) {
    std::string out;
    for (char c : s)
        if (c != ',' && c != '_' && c != ' ') out += c;
    return out;
}

inline bool is_digit_group(std::string_view s) {
    return s.size() == 3 && std::ranges::all_of(s, [](char c) { return c >= '0' && c <= '9'; });
}

// Line reader that tracks line numbers, strips a UTF-8 BOM and skips blank
// lines.
class Lines {
public:
    explicit Lines(std::istream& in) : in_(in) {}

    bool next(std::string& line) {
        while (std::getline(in_, line)) {
            ++number_;
            if (number_ == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!fmt::trim(line).empty()) return true;
        }
        if (in_.bad()) throw IoError("read failure");
        return false;
    }

    std::size_t number() const noexcept { return number_; }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("line " + std::to_string(number_) + ": " + what);
    }

private:
    std::istream& in_;
    std::size_t number_ = 0;
};

inline void expect_header(Lines& lines, std::string_view expected) {
    std::string line;
    if (!lines.next(line)) throw DataError("empty input: missing header '" + std::string(expected) + "'");
    if (fmt::trim(line) != expected) lines.fail("expected header '" + std::string(expected) + "'");
}

inline double number(Lines& lines, std::string_view field, std::string_view what) {
    double v;
    if (!fmt::parse_double(field, v)) lines.fail("malformed " + std::string(what) + " '" + std::string(field) + "'");
    return v;
}

inline int integer(Lines& lines, std::string_view field, std::string_view what) {
    int v;
    if (!fmt::parse_int(field, v)) lines.fail("malformed " + std::string(what) + " '" + std::string(field) + "'");
    return v;
}

inline void check(std::ostream& out) {
    if (!out) throw IoError("write failure");
}

} // namespace detail

/// Reads `year,value` records in any year order.  Values may carry
/// thousands separators, either quoted ("1,369") or bare (1,369).
inline TimeSeries read_series_csv(std::istream& in) {
    detail::Lines lines(in);
    detail::expect_header(lines, "year,value");
    std::vector<Observation> points;
    std::string line;
    while (lines.next(line)) {
        auto f = detail::split(line);
        if (f.size() < 2) lines.fail("expected 'year,value'");
        if (f.size() > 2) {
            // Bare thousands separators split the value across fields.
            for (std::size_t i = 2; i < f.size(); ++i)
                if (!detail::is_digit_group(f[i])) lines.fail("too many fields");
            for (std::size_t i = 2; i < f.size(); ++i) f[1] += f[i];
        }
        const int year = detail::integer(lines, f[0], "year");
        const double value = detail::number(lines, detail::strip_thousands(f[1]), "value");
        if (std::ranges::find(points, year, &Observation::year) != points.end())
            throw DataError("line " + std::to_string(lines.number()) + ": duplicate year " + std::to_string(year));
        points.push_back({year, value});
    }
    if (points.empty()) throw DataError("no data rows");
    return TimeSeries(std::move(points));
}

inline void write_series_csv(const TimeSeries& series, std::ostream& out) {
    fmt::ClassicLocale classic(out);
    out << "year,value\n";
    for (const auto& p : series) out << p.year << ',' << fmt::exact(p.value) << '\n';
    detail::check(out);
}

inline void write_partition_csv(const Partition& partition, std::ostream& out) {
    fmt::ClassicLocale classic(out);
    out << "index,lo,hi,midpoint\n";
    for (Label j = 1; j <= partition.size(); ++j) {
        const auto& iv = partition.interval(j);
        out << j << ',' << fmt::exact(iv.lo) << ',' << fmt::exact(iv.hi) << ','
            << fmt::exact(partition.midpoint(j)) << '\n';
    }
    detail::check(out);
}

inline Partition read_partition_csv(std::istream& in) {
    detail::Lines lines(in);
    detail::expect_header(lines, "index,lo,hi,midpoint");
    std::vector<Interval> intervals;
    std::string line;
    while (lines.next(line)) {
        const auto f = detail::split(line);
        if (f.size() != 4) lines.fail("expected 4 fields");
        if (detail::integer(lines, f[0], "index") != static_cast<int>(intervals.size()) + 1)
            lines.fail("interval indices must run 1..n in order");
        intervals.push_back({detail::number(lines, f[1], "lo"), detail::number(lines, f[2], "hi")});
    }
    if (intervals.empty()) throw DataError("partition file has no intervals");
    const Universe u(intervals.front().lo, intervals.back().hi);
    return Partition(u, std::move(intervals));
}

inline void write_fuzzified_csv(const TimeSeries& series, const Partition& partition,
                                const FuzzifiedSeries& fuzzified, std::ostream& out) {
    fmt::ClassicLocale classic(out);
    if (series.size() != fuzzified.size())
        throw Inconsistency("series and fuzzified series differ in length");
    out << "year,value,label,interval_lo,interval_hi,midpoint\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& l = fuzzified.labels[i];
        const auto& iv = partition.interval(l.label);
        out << l.year << ',' << fmt::exact(series[i].value) << ',' << l.label << ','
            << fmt::exact(iv.lo) << ',' << fmt::exact(iv.hi) << ',' << fmt::exact(partition.midpoint(l.label))
            << '\n';
    }
    detail::check(out);
}

struct FuzzifiedFile {
    TimeSeries series;
    FuzzifiedSeries fuzzified;
};

/// Reads a fuzzified CSV and checks every row's interval against
/// `partition`, so a file produced from another partition is rejected.
inline FuzzifiedFile read_fuzzified_csv(std::istream& in, const Partition& partition) {
    detail::Lines lines(in);
    detail::expect_header(lines, "year,value,label,interval_lo,interval_hi,midpoint");
    std::vector<Observation> points;
    FuzzifiedSeries fz;
    fz.partition_ref = partition.fingerprint();
    std::string line;
    while (lines.next(line)) {
        const auto f = detail::split(line);
        if (f.size() != 6) lines.fail("expected 6 fields");
        const int year = detail::integer(lines, f[0], "year");
        const double value = detail::number(lines, f[1], "value");
        const Label label = detail::integer(lines, f[2], "label");
        if (label < 1 || label > partition.size())
            throw Inconsistency("line " + std::to_string(lines.number()) + ": label " +
                                std::to_string(label) + " not in partition");
        const auto& iv = partition.interval(label);
        if (detail::number(lines, f[3], "interval_lo") != iv.lo ||
            detail::number(lines, f[4], "interval_hi") != iv.hi)
            throw Inconsistency("line " + std::to_string(lines.number()) +
                                ": interval bounds differ from the partition");
        if (!fz.labels.empty() && year <= fz.labels.back().year)
            lines.fail("years must be strictly ascending");
        points.push_back({year, value});
        fz.labels.push_back({year, label});
    }
    if (points.empty()) throw DataError("no data rows");
    return {TimeSeries(std::move(points)), std::move(fz)};
}

namespace detail {

inline std::string join(const std::vector<Label>& labels) {
    std::string s;
    for (Label l : labels) s += (s.empty() ? "" : ",") + std::to_string(l);
    return s;
}

inline std::vector<Label> parse_labels(Lines& lines, std::string_view text) {
    std::vector<Label> out;
    for (const auto& f : split(text)) out.push_back(integer(lines, f, "label"));
    return out;
}

} // namespace detail

/// One group per line, `L1,L2,L3 -> C1[,C2...]`, antecedents sorted
/// lexicographically.
inline void write_model_listing(const FlrgModel& model, std::ostream& out) {
    fmt::ClassicLocale classic(out);
    for (const auto& [antecedent, consequents] : model.groups)
        out << detail::join(antecedent) << " -> "
            << detail::join(std::vector<Label>(consequents.begin(), consequents.end())) << '\n';
    detail::check(out);
}

/// Parses a group listing.  Relationship history is not part of the
/// format, so the result carries groups only.
inline FlrgModel read_model_listing(std::istream& in) {
    detail::Lines lines(in);
    FlrgModel model;
    std::string line;
    while (lines.next(line)) {
        const auto arrow = line.find("->");
        if (arrow == std::string::npos) lines.fail("expected 'antecedent -> consequents'");
        auto antecedent = detail::parse_labels(lines, std::string_view(line).substr(0, arrow));
        auto consequents = detail::parse_labels(lines, std::string_view(line).substr(arrow + 2));
        if (model.k == 0) model.k = static_cast<int>(antecedent.size());
        if (static_cast<int>(antecedent.size()) != model.k) lines.fail("inconsistent order");
        if (consequents.empty()) lines.fail("no consequents");
        model.groups[antecedent].insert(consequents.begin(), consequents.end());
    }
    if (model.groups.empty()) throw DataError("model listing is empty");
    return model;
}

/// Table-style rendering: forecasts and relative errors at 4 decimals, MSE
/// at 2, AFER (percent) at 6.
inline void write_evaluation_csv(const EvaluationReport& report, std::ostream& out) {
    fmt::ClassicLocale classic(out);
    if (report.rows.empty()) throw InvalidArgument("evaluation report has no rows");
    out << "year,actual,midpoint,forecast,squared_error,relative_error\n";
    for (const auto& r : report.rows)
        out << r.year << ',' << fmt::exact(r.actual) << ',' << fmt::fixed(r.midpoint, 4) << ','
            << fmt::fixed(r.forecast, 4) << ',' << fmt::fixed(r.squared_error, 4) << ','
            << fmt::fixed(r.relative_error, 4) << '\n';
    out << "MSE," << fmt::fixed(report.mse, 2) << '\n';
    out << "AFER_percent," << fmt::fixed(report.afer, 6) << '\n';
    detail::check(out);
}

inline void write_comparison_csv(const ComparisonReport& report, std::ostream& out) {
    fmt::ClassicLocale classic(out);
    out << "year,actual";
    for (const auto& m : report.methods) out << ',' << m.name;
    out << '\n';
    for (std::size_t i = 0; i < report.years.size(); ++i) {
        out << report.years[i] << ',' << fmt::exact(report.actuals[i]);
        for (const auto& m : report.methods) out << ',' << fmt::fixed(m.forecasts[i], 4);
        out << '\n';
    }
    out << "MSE,";
    for (const auto& m : report.methods) out << ',' << fmt::fixed(m.mse, 2);
    out << "\nAFER_percent,";
    for (const auto& m : report.methods) out << ',' << fmt::fixed(m.afer, 6);
    out << '\n';
    detail::check(out);
}

/// Reads a comparison CSV back.  Metrics are recomputed from the (rounded)
/// forecast columns; the footer rows are skipped.
inline ComparisonReport read_comparison_csv(std::istream& in) {
    detail::Lines lines(in);
    std::string line;
    if (!lines.next(line)) throw DataError("empty comparison file");
    const auto header = detail::split(line);
    if (header.size() < 3 || header[0] != "year" || header[1] != "actual")
        lines.fail("expected header 'year,actual,<method>...'");

    std::vector<Observation> actuals;
    std::vector<MethodForecasts> methods(header.size() - 2);
    for (std::size_t m = 0; m < methods.size(); ++m) methods[m].name = header[m + 2];
    while (lines.next(line)) {
        const auto f = detail::split(line);
        if (f[0] == "MSE" || f[0] == "AFER_percent") continue;
        if (f.size() != header.size()) lines.fail("expected " + std::to_string(header.size()) + " fields");
        const int year = detail::integer(lines, f[0], "year");
        actuals.push_back({year, detail::number(lines, f[1], "actual")});
        for (std::size_t m = 0; m < methods.size(); ++m)
            methods[m].forecasts.push_back({year, detail::number(lines, f[m + 2], "forecast")});
    }
    if (actuals.empty()) throw DataError("comparison file has no rows");
    return compare(TimeSeries(std::move(actuals)), methods);
}

} // namespace mbfts::csv
