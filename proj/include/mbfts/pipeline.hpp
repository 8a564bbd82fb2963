#pragma once

#include <algorithm>
#include <string>

#include "config.hpp"
#include "fuzzify.hpp"
#include "metrics.hpp"
#include "model.hpp"
#include "partition.hpp"
#include "series.hpp"

namespace mbfts {

struct PipelineResult {
    BasePartition base;
    Partition partition;
    FuzzifiedSeries fuzzified;
    DefuzzTable table;
    FlrgModel model;
    EvaluationReport evaluation;
};

struct PartitionStage {
    BasePartition base;
    Partition partition;
};

/// Base tally and refinement only.
inline PartitionStage build_partition(const TimeSeries& series, const RunConfig& cfg) {
    cfg.validate();
    PartitionStage r;
    // Clamp mode admits out-of-universe values; the base tally needs them
    // inside, so clamp before counting as well.
    if (cfg.boundary_mode == BoundaryMode::clamp) {
        std::vector<Observation> clamped(series.begin(), series.end());
        for (auto& p : clamped) p.value = std::clamp(p.value, cfg.universe_lo, cfg.universe_hi);
        r.base = BasePartition::from_series(cfg.universe(), cfg.base_interval_count, TimeSeries(clamped),
                                            cfg.subdivision_counts);
    } else {
        r.base = BasePartition::from_series(cfg.universe(), cfg.base_interval_count, series,
                                            cfg.subdivision_counts);
    }
    r.partition = refine_partition(r.base);
    return r;
}

/// Partition -> fuzzify -> relationship groups -> in-sample evaluation.
inline PipelineResult run_pipeline(const TimeSeries& series, const RunConfig& cfg) {
    PipelineResult r;
    auto stage = build_partition(series, cfg);
    r.base = std::move(stage.base);
    r.partition = std::move(stage.partition);
    r.fuzzified = fuzzify_series(r.partition, series, cfg.boundary_mode);
    r.table = build_defuzz_table(r.partition);
    r.model = build_flrg_model(r.fuzzified, cfg.order_k, cfg.series_direction);
    r.evaluation = evaluate(series, r.partition, r.table, r.fuzzified);
    return r;
}

inline MethodForecasts to_method(std::string name, const EvaluationReport& report) {
    MethodForecasts m{std::move(name), {}};
    for (const auto& row : report.rows) m.forecasts.push_back({row.year, row.forecast});
    return m;
}

} // namespace mbfts
