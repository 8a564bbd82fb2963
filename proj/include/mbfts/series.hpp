#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"

namespace mbfts {

struct Observation {
    int year = 0;
    double value = 0.0;

    friend bool operator==(const Observation&, const Observation&) = default;
};

/// Yearly crisp observations, stored in ascending year order.
class TimeSeries {
public:
    TimeSeries() = default;

    /// Accepts points in any order; they are sorted by year.  Duplicate
    /// years and negative values are rejected.
    explicit TimeSeries(std::vector<Observation> points) : points_(std::move(points)) {
        std::ranges::sort(points_, {}, &Observation::year);
        for (std::size_t i = 0; i < points_.size(); ++i) {
            if (i > 0 && points_[i].year == points_[i - 1].year)
                throw DataError("duplicate year " + std::to_string(points_[i].year));
            if (!(points_[i].value >= 0.0))
                throw DataError("negative or non-finite value for year " +
                                std::to_string(points_[i].year));
        }
    }

    std::span<const Observation> points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    const Observation& operator[](std::size_t i) const { return points_[i]; }

    auto begin() const noexcept { return points_.begin(); }
    auto end() const noexcept { return points_.end(); }

    std::vector<double> values() const {
        std::vector<double> out;
        out.reserve(points_.size());
        for (const auto& p : points_) out.push_back(p.value);
        return out;
    }

    friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

private:
    std::vector<Observation> points_;
};

} // namespace mbfts
