#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <mbfts/mbfts.hpp>

#include "published.hpp"

namespace fixtures {

inline mbfts::TimeSeries belgium() {
    std::vector<mbfts::Observation> pts;
    for (const auto& row : published::evaluation) pts.push_back({row.year, row.actual});
    return mbfts::TimeSeries(std::move(pts));
}

inline mbfts::Partition preset_partition() {
    mbfts::BasePartition base;
    base.universe = {900, 1700};
    base.intervals = mbfts::build_base_partition(base.universe, 4);
    base.frequencies = mbfts::count_frequencies(belgium(), base.intervals);
    base.subdivision_counts = {1, 6, 13, 9};
    return mbfts::refine_partition(base);
}

// Labels for 1974..2004 in ascending year order, frozen from
// oracle::integer_label over the bundled values.
inline const std::vector<int> belgium_labels{24, 18, 22, 25, 27, 24, 26, 23, 18, 19, 12, 8, 18, 13, 16, 20,
                                             24, 19, 13, 10, 15, 5,  2,  3,  5,  4,  6,  7,  3,  1,  1};

inline std::string data_path(const std::string& name) { return std::string(MBFTS_DATA_DIR) + "/" + name; }

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace fixtures
