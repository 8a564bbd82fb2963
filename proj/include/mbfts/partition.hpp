#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "series.hpp"

namespace mbfts {

/// Closed range of values the series is assumed to live in.
struct Universe {
    double lo = 0.0;
    double hi = 0.0;

    Universe() = default;
    Universe(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (!(lo < hi))
            throw InvalidArgument("universe requires lo < hi, got [" + std::to_string(lo) +
                                  ", " + std::to_string(hi) + "]");
    }

    bool contains(double v) const noexcept { return lo <= v && v <= hi; }
    double width() const noexcept { return hi - lo; }

    friend bool operator==(const Universe&, const Universe&) = default;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const noexcept { return hi - lo; }
    double midpoint() const noexcept { return (lo + hi) / 2.0; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Splits the universe into `m` equal-width intervals.  The last interval
/// ends exactly at `universe.hi`.
inline std::vector<Interval> build_base_partition(const Universe& universe, int m) {
    if (m < 1) throw InvalidArgument("base interval count must be >= 1, got " + std::to_string(m));
    const double width = universe.width() / m;
    std::vector<Interval> out;
    out.reserve(static_cast<std::size_t>(m));
    double lo = universe.lo;
    for (int i = 0; i < m; ++i) {
        const double hi = (i + 1 == m) ? universe.hi : universe.lo + width * (i + 1);
        out.push_back({lo, hi});
        lo = hi;
    }
    return out;
}

namespace detail {

// Index of the interval containing v under the lower-inclusive convention;
// the final interval is closed above.  Caller guarantees v is in range.
inline std::size_t locate(std::span<const Interval> intervals, double v) {
    auto it = std::upper_bound(intervals.begin(), intervals.end(), v,
                               [](double x, const Interval& iv) { return x < iv.lo; });
    std::size_t idx = static_cast<std::size_t>(it - intervals.begin());
    return idx == 0 ? 0 : idx - 1;
}

} // namespace detail

/// Observation counts per base interval.
inline std::vector<int> count_frequencies(const TimeSeries& series,
                                          std::span<const Interval> base) {
    std::vector<int> counts(base.size(), 0);
    if (base.empty()) return counts;
    const Universe u{base.front().lo, base.back().hi};
    for (const auto& p : series) {
        if (!u.contains(p.value))
            throw OutOfUniverse("value " + std::to_string(p.value) + " of year " +
                                std::to_string(p.year) + " lies outside [" +
                                std::to_string(u.lo) + ", " + std::to_string(u.hi) + "]");
        ++counts[detail::locate(base, p.value)];
    }
    return counts;
}

struct BasePartition {
    Universe universe;
    std::vector<Interval> intervals;
    std::vector<int> frequencies;
    std::vector<int> subdivision_counts;

    /// Builds the equal-width base split of `universe`, tallies `series`
    /// against it and attaches the requested subdivision counts.
    static BasePartition from_series(const Universe& universe, int m, const TimeSeries& series,
                                     std::vector<int> subdivision_counts) {
        BasePartition bp;
        bp.universe = universe;
        bp.intervals = build_base_partition(universe, m);
        bp.frequencies = count_frequencies(series, bp.intervals);
        if (subdivision_counts.size() != bp.intervals.size())
            throw InvalidArgument("expected " + std::to_string(bp.intervals.size()) +
                                  " subdivision counts, got " +
                                  std::to_string(subdivision_counts.size()));
        bp.subdivision_counts = std::move(subdivision_counts);
        return bp;
    }
};

/// The refined, flattened partition u_1..u_n.  Labels are 1-based.
class Partition {
public:
    Partition() = default;

    /// Takes ownership of contiguous intervals.  Throws if they leave gaps,
    /// overlap, or do not exactly span `universe`.
    Partition(Universe universe, std::vector<Interval> intervals)
        : universe_(universe), intervals_(std::move(intervals)) {
        if (intervals_.empty()) throw InvalidArgument("partition needs at least one interval");
        if (intervals_.front().lo != universe_.lo || intervals_.back().hi != universe_.hi)
            throw InvalidArgument("intervals do not span the universe");
        midpoints_.reserve(intervals_.size());
        for (std::size_t i = 0; i < intervals_.size(); ++i) {
            const auto& iv = intervals_[i];
            if (!(iv.lo < iv.hi)) throw InvalidArgument("empty interval at index " + std::to_string(i + 1));
            if (i > 0 && intervals_[i - 1].hi != iv.lo)
                throw InvalidArgument("intervals not contiguous at index " + std::to_string(i + 1));
            midpoints_.push_back(iv.midpoint());
        }
    }

    const Universe& universe() const noexcept { return universe_; }
    std::span<const Interval> intervals() const noexcept { return intervals_; }
    std::span<const double> midpoints() const noexcept { return midpoints_; }
    int size() const noexcept { return static_cast<int>(intervals_.size()); }

    const Interval& interval(int label) const { return intervals_.at(index_of(label)); }
    double midpoint(int label) const { return midpoints_.at(index_of(label)); }

    /// Stable identity of the exact bounds; used to detect mismatched inputs.
    std::uint64_t fingerprint() const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        auto mix = [&h](double d) {
            auto bits = std::bit_cast<std::uint64_t>(d);
            for (int i = 0; i < 8; ++i) {
                h ^= (bits >> (8 * i)) & 0xffu;
                h *= 1099511628211ull;
            }
        };
        for (const auto& iv : intervals_) mix(iv.lo);
        mix(universe_.hi);
        return h;
    }

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.universe_ == b.universe_ && a.intervals_ == b.intervals_;
    }

private:
    std::size_t index_of(int label) const {
        if (label < 1 || label > size())
            throw InvalidArgument("label " + std::to_string(label) + " outside 1.." +
                                  std::to_string(size()));
        return static_cast<std::size_t>(label - 1);
    }

    Universe universe_;
    std::vector<Interval> intervals_;
    std::vector<double> midpoints_;
};

/// Replaces base interval i by subdivision_counts[i] equal-width pieces.
/// Subinterval bounds are lo + s * width; each base interval's own upper
/// bound is reused verbatim so neighbouring groups share their edge.
inline Partition refine_partition(const BasePartition& base) {
    if (base.subdivision_counts.size() != base.intervals.size())
        throw InvalidArgument("subdivision counts do not match base intervals");
    std::vector<Interval> out;
    out.reserve(static_cast<std::size_t>(
        std::accumulate(base.subdivision_counts.begin(), base.subdivision_counts.end(), 0)));
    for (std::size_t i = 0; i < base.intervals.size(); ++i) {
        const int count = base.subdivision_counts[i];
        if (count < 1)
            throw InvalidArgument("subdivision count for base interval " + std::to_string(i + 1) +
                                  " must be >= 1, got " + std::to_string(count));
        const auto& b = base.intervals[i];
        const double width = b.width() / count;
        double lo = b.lo;
        for (int s = 0; s < count; ++s) {
            const double hi = (s + 1 == count) ? b.hi : b.lo + width * (s + 1);
            out.push_back({lo, hi});
            lo = hi;
        }
    }
    return Partition(base.universe, std::move(out));
}

/// Heuristic apportionment of `target_total` subintervals across base
/// intervals in proportion to their frequencies (largest remainder, every
/// count at least 1, ties toward the lower index).  The result is the
/// integer vector nearest in squared distance to the exact quotas.
///
/// Not the published rule: that rule cannot be recovered from the observed
/// frequencies, so reproduction runs use explicit counts instead.
inline std::vector<int> suggest_subdivision_counts(std::span<const int> frequencies,
                                                   int target_total) {
    if (frequencies.empty()) throw InvalidArgument("no frequencies given");
    long total = 0;
    for (int f : frequencies) {
        if (f < 0) throw InvalidArgument("negative frequency");
        total += f;
    }
    if (total == 0) throw InvalidArgument("all frequencies are zero");
    if (target_total < static_cast<int>(frequencies.size()))
        throw InvalidArgument("target total " + std::to_string(target_total) +
                              " is smaller than the number of intervals");

    // Quotas scaled by the frequency total stay integral, so ties compare
    // exactly: quota_i - c_i == (target * f_i - c_i * total) / total.
    const std::size_t m = frequencies.size();
    std::vector<long> scaled(m);
    std::vector<int> counts(m);
    int assigned = 0;
    for (std::size_t i = 0; i < m; ++i) {
        scaled[i] = static_cast<long>(target_total) * frequencies[i];
        counts[i] = std::max(1, static_cast<int>(scaled[i] / total));
        assigned += counts[i];
    }
    auto excess = [&](std::size_t i) { return counts[i] * total - scaled[i]; };
    // Greedy steps on a separable convex objective stay optimal.
    while (assigned < target_total) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < m; ++i)
            if (excess(i) < excess(best)) best = i;
        ++counts[best];
        ++assigned;
    }
    while (assigned > target_total) {
        std::size_t best = m;
        for (std::size_t i = 0; i < m; ++i) {
            if (counts[i] <= 1) continue;
            if (best == m || excess(i) >= excess(best)) best = i;
        }
        --counts[best];
        --assigned;
    }
    return counts;
}

} // namespace mbfts
