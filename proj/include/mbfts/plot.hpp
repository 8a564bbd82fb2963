#pragma once

#include <algorithm>
#include <array>
#include <locale>
#include <span>
#include <sstream>
#include <string>
#include <string_view>

#include "error.hpp"
#include "format.hpp"
#include "metrics.hpp"

namespace mbfts {

enum class PlotFormat { svg, tsv };

inline PlotFormat parse_plot_format(std::string_view s) {
    if (s == "svg") return PlotFormat::svg;
    if (s == "tsv") return PlotFormat::tsv;
    throw UsageError("unknown plot format '" + std::string(s) + "' (expected svg or tsv)");
}

namespace detail {

inline std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string plot_tsv(const ComparisonReport& report) {
    std::ostringstream out;
    out.imbue(std::locale::classic());
    out << "year\tactual";
    for (const auto& m : report.methods) out << '\t' << m.name;
    out << '\n';
    for (std::size_t i = 0; i < report.years.size(); ++i) {
        out << report.years[i] << '\t' << fmt::exact(report.actuals[i]);
        for (const auto& m : report.methods) out << '\t' << fmt::fixed(m.forecasts[i], 4);
        out << '\n';
    }
    return out.str();
}

inline std::string plot_svg(const ComparisonReport& report) {
    constexpr double width = 860, height = 480;
    constexpr double left = 70, right = 170, top = 40, bottom = 50;
    constexpr std::array<std::string_view, 8> palette{"#000000", "#1f77b4", "#ff7f0e", "#2ca02c",
                                                      "#d62728", "#9467bd", "#8c564b", "#e377c2"};

    double lo = *std::ranges::min_element(report.actuals);
    double hi = *std::ranges::max_element(report.actuals);
    for (const auto& m : report.methods) {
        lo = std::min(lo, *std::ranges::min_element(m.forecasts));
        hi = std::max(hi, *std::ranges::max_element(m.forecasts));
    }
    const double pad = hi > lo ? (hi - lo) * 0.05 : 1.0;
    lo -= pad;
    hi += pad;
    const int y0 = report.years.front(), y1 = report.years.back();
    const double span_x = y1 > y0 ? y1 - y0 : 1;
    const double plot_w = width - left - right, plot_h = height - top - bottom;

    auto x_of = [&](int year) { return left + (year - y0) / span_x * plot_w; };
    auto y_of = [&](double v) { return top + (hi - v) / (hi - lo) * plot_h; };

    std::ostringstream out;
    out.imbue(std::locale::classic());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << left << "\" y=\"24\" font-size=\"14\">Actual values and forecasts</text>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w << "\" y2=\""
        << top + plot_h << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_h
        << "\" stroke=\"black\"/>\n";

    for (int year = y0; year <= y1; ++year) {
        if ((year - y0) % 5 != 0 && year != y1) continue;
        const std::string x = fmt::fixed(x_of(year), 2);
        out << "<text x=\"" << x << "\" y=\"" << fmt::fixed(top + plot_h + 18, 2)
            << "\" text-anchor=\"middle\">" << year << "</text>\n";
    }
    for (int t = 0; t <= 4; ++t) {
        const double v = lo + (hi - lo) * t / 4.0;
        out << "<text x=\"" << left - 6 << "\" y=\"" << fmt::fixed(y_of(v) + 4, 2) << "\" text-anchor=\"end\">"
            << fmt::fixed(v, 0) << "</text>\n";
    }

    auto polyline = [&](std::string_view name, std::span<const double> values, std::size_t colour) {
        out << "<polyline data-series=\"" << xml_escape(name) << "\" fill=\"none\" stroke=\""
            << palette[colour % palette.size()] << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < values.size(); ++i)
            out << (i ? " " : "") << fmt::fixed(x_of(report.years[i]), 2) << ','
                << fmt::fixed(y_of(values[i]), 2);
        out << "\"/>\n";
        const double ly = top + 10 + 18.0 * static_cast<double>(colour);
        out << "<line x1=\"" << left + plot_w + 15 << "\" y1=\"" << fmt::fixed(ly, 2) << "\" x2=\""
            << left + plot_w + 40 << "\" y2=\"" << fmt::fixed(ly, 2) << "\" stroke=\""
            << palette[colour % palette.size()] << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << left + plot_w + 46 << "\" y=\"" << fmt::fixed(ly + 4, 2) << "\">"
            << xml_escape(name) << "</text>\n";
    };
    polyline("actual", report.actuals, 0);
    for (std::size_t m = 0; m < report.methods.size(); ++m)
        polyline(report.methods[m].name, report.methods[m].forecasts, m + 1);
    out << "</svg>\n";
    return out.str();
}

} // namespace detail

/// Renders the comparison as plotting data (TSV) or a self-contained SVG
/// line chart: one polyline per method plus the actual series.
inline std::string emit_plot_data(const ComparisonReport& report, PlotFormat format) {
    if (report.years.empty()) throw InvalidArgument("nothing to plot");
    return format == PlotFormat::tsv ? detail::plot_tsv(report) : detail::plot_svg(report);
}

} // namespace mbfts
