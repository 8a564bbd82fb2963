#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"
#include "partition.hpp"
#include "series.hpp"

namespace mbfts {

using Label = int;

enum class BoundaryMode { strict, clamp };

/// Label of the interval whose fuzzy set gives `value` maximal membership,
/// i.e. the interval containing it ([lo, hi) except the last, [lo, hi]).
inline Label fuzzify_value(const Partition& partition, double value,
                           BoundaryMode mode = BoundaryMode::strict) {
    const auto& u = partition.universe();
    if (!u.contains(value)) {
        if (mode == BoundaryMode::clamp && value == value)
            return value < u.lo ? 1 : partition.size();
        throw OutOfUniverse("value " + std::to_string(value) + " outside universe [" +
                            std::to_string(u.lo) + ", " + std::to_string(u.hi) + "]");
    }
    return static_cast<Label>(detail::locate(partition.intervals(), value)) + 1;
}

struct LabeledYear {
    int year = 0;
    Label label = 0;

    friend bool operator==(const LabeledYear&, const LabeledYear&) = default;
};

struct FuzzifiedSeries {
    std::vector<LabeledYear> labels;
    std::uint64_t partition_ref = 0;

    std::size_t size() const noexcept { return labels.size(); }
    bool empty() const noexcept { return labels.empty(); }

    std::vector<Label> label_sequence() const {
        std::vector<Label> out;
        out.reserve(labels.size());
        for (const auto& l : labels) out.push_back(l.label);
        return out;
    }

    friend bool operator==(const FuzzifiedSeries&, const FuzzifiedSeries&) = default;
};

inline FuzzifiedSeries fuzzify_series(const Partition& partition, const TimeSeries& series,
                                      BoundaryMode mode = BoundaryMode::strict) {
    FuzzifiedSeries out;
    out.partition_ref = partition.fingerprint();
    out.labels.reserve(series.size());
    for (const auto& p : series) {
        try {
            out.labels.push_back({p.year, fuzzify_value(partition, p.value, mode)});
        } catch (const OutOfUniverse& e) {
            throw OutOfUniverse("year " + std::to_string(p.year) + ": " + e.what());
        }
    }
    return out;
}

struct Membership {
    Label label = 0;
    double grade = 0.0;

    friend bool operator==(const Membership&, const Membership&) = default;
};

/// Triangular fuzzy set A_label over the partition: grade 1 on its own
/// interval, 0.5 on each existing neighbour, 0 elsewhere (omitted).
inline std::vector<Membership> membership_vector(const Partition& partition, Label label) {
    const int n = partition.size();
    if (label < 1 || label > n)
        throw InvalidArgument("label " + std::to_string(label) + " outside 1.." + std::to_string(n));
    std::vector<Membership> out;
    if (label > 1) out.push_back({label - 1, 0.5});
    out.push_back({label, 1.0});
    if (label < n) out.push_back({label + 1, 0.5});
    return out;
}

} // namespace mbfts
