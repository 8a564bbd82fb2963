#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "fuzzify.hpp"
#include "model.hpp"
#include "partition.hpp"
#include "series.hpp"

namespace mbfts {

struct ForecastPair {
    double actual = 0.0;
    double forecast = 0.0;
};

/// Mean squared error over all pairs.
inline double mse(std::span<const ForecastPair> pairs) {
    if (pairs.empty()) throw InvalidArgument("mse of an empty list");
    double sum = 0.0;
    for (const auto& p : pairs) {
        const double d = p.actual - p.forecast;
        sum += d * d;
    }
    return sum / static_cast<double>(pairs.size());
}

/// Average forecasting error rate in percent: mean of |A - F| / A, x100.
/// The per-row division by the actual value is what the published
/// relative-error column and its 0.658643 % total both use.
inline double afer(std::span<const ForecastPair> pairs) {
    if (pairs.empty()) throw InvalidArgument("afer of an empty list");
    double sum = 0.0;
    for (const auto& p : pairs) {
        if (!(p.actual > 0.0))
            throw DomainError("relative error undefined for actual value " + std::to_string(p.actual));
        sum += std::abs(p.actual - p.forecast) / p.actual;
    }
    return sum / static_cast<double>(pairs.size()) * 100.0;
}

struct EvaluationRow {
    int year = 0;
    double actual = 0.0;
    double midpoint = 0.0;
    double forecast = 0.0;
    double squared_error = 0.0;
    double relative_error = 0.0;
};

struct EvaluationReport {
    std::vector<EvaluationRow> rows;
    double mse = 0.0;
    double afer = 0.0;  // percent

    std::vector<ForecastPair> pairs() const {
        std::vector<ForecastPair> out;
        out.reserve(rows.size());
        for (const auto& r : rows) out.push_back({r.actual, r.forecast});
        return out;
    }
};

inline EvaluationReport evaluate(const TimeSeries& series, const Partition& partition,
                                 const DefuzzTable& table, const FuzzifiedSeries& fuzzified) {
    if (series.size() != fuzzified.size())
        throw Inconsistency("series has " + std::to_string(series.size()) +
                            " points but fuzzified series has " + std::to_string(fuzzified.size()));
    const auto recon = reconstruct_in_sample(partition, table, fuzzified);

    EvaluationReport report;
    report.rows.reserve(recon.size());
    for (std::size_t i = 0; i < recon.size(); ++i) {
        const auto& obs = series[i];
        if (obs.year != recon[i].year)
            throw Inconsistency("year mismatch at row " + std::to_string(i + 1) + ": " +
                                std::to_string(obs.year) + " vs " + std::to_string(recon[i].year));
        if (!(obs.value > 0.0))
            throw DomainError("relative error undefined for year " + std::to_string(obs.year));
        const double d = obs.value - recon[i].forecast;
        report.rows.push_back({obs.year, obs.value, recon[i].midpoint, recon[i].forecast, d * d,
                               std::abs(d) / obs.value});
    }
    if (report.rows.empty()) throw InvalidArgument("cannot evaluate an empty series");
    const auto p = report.pairs();
    report.mse = mse(p);
    report.afer = afer(p);
    return report;
}

struct MethodForecasts {
    std::string name;
    std::vector<Observation> forecasts;  // (year, forecast value)
};

struct MethodResult {
    std::string name;
    std::vector<double> forecasts;  // aligned with ComparisonReport::years
    double mse = 0.0;
    double afer = 0.0;
};

struct ComparisonReport {
    std::vector<int> years;
    std::vector<double> actuals;
    std::vector<MethodResult> methods;

    /// Index of the method with the smallest value of `metric`; ties keep
    /// the earlier method.
    template <class Metric>
    std::size_t best_by(Metric metric) const {
        std::size_t best = 0;
        for (std::size_t i = 1; i < methods.size(); ++i)
            if (metric(methods[i]) < metric(methods[best])) best = i;
        return best;
    }
};

/// Scores each method against the actual series.  Every method must supply
/// a forecast for every actual year; extra years are ignored.
inline ComparisonReport compare(const TimeSeries& actuals, std::span<const MethodForecasts> methods) {
    if (actuals.empty()) throw InvalidArgument("cannot compare against an empty series");
    ComparisonReport report;
    for (const auto& p : actuals) {
        report.years.push_back(p.year);
        report.actuals.push_back(p.value);
    }
    for (const auto& m : methods) {
        MethodResult r;
        r.name = m.name;
        r.forecasts.reserve(actuals.size());
        std::vector<ForecastPair> pairs;
        pairs.reserve(actuals.size());
        for (const auto& p : actuals) {
            auto it = std::ranges::find(m.forecasts, p.year, &Observation::year);
            if (it == m.forecasts.end())
                throw Inconsistency("method '" + m.name + "' has no forecast for year " +
                                    std::to_string(p.year));
            r.forecasts.push_back(it->value);
            pairs.push_back({p.value, it->value});
        }
        r.mse = mse(pairs);
        r.afer = afer(pairs);
        report.methods.push_back(std::move(r));
    }
    return report;
}

} // namespace mbfts
