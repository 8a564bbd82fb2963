// Runs the full pipeline on the bundled Belgium road-accident series and
// prints the in-sample table, the relationship groups and a one-step
// forecast for the year after the data ends.

#include <fstream>
#include <iostream>

#include <mbfts/mbfts.hpp>

int main() {
    using namespace mbfts;
    try {
        std::ifstream in(std::string(MBFTS_DATA_DIR) + "/belgium_accidents.csv", std::ios::binary);
        if (!in) throw IoError("cannot open bundled belgium_accidents.csv");
        const auto series = csv::read_series_csv(in);

        const RunConfig cfg; // universe [900,1700], counts 1,6,13,9, order 3
        const auto r = run_pipeline(series, cfg);

        std::cout << "partition: " << r.partition.size() << " intervals\n\n";
        std::cout << "year  actual  label  midpoint    forecast\n";
        for (std::size_t i = 0; i < r.evaluation.rows.size(); ++i) {
            const auto& row = r.evaluation.rows[i];
            std::cout << row.year << "  " << fmt::fixed(row.actual, 0) << "    " << r.fuzzified.labels[i].label
                      << (r.fuzzified.labels[i].label < 10 ? "      " : "     ") << fmt::fixed(row.midpoint, 4) << "  "
                      << fmt::fixed(row.forecast, 4) << '\n';
        }
        std::cout << "\nMSE = " << fmt::fixed(r.evaluation.mse, 2) << ", AFER = " << fmt::fixed(r.evaluation.afer, 6)
                  << "%\n\ngroups:\n";
        csv::write_model_listing(r.model, std::cout);

        const auto labels = r.fuzzified.label_sequence();
        const std::vector<Label> recent(labels.end() - r.model.k, labels.end());
        const auto next = forecast_next(r.model, r.table, recent, Fallback::persist);
        std::cout << "\nforecast for " << series[series.size() - 1].year + 1 << ": " << fmt::fixed(next.value, 2)
                  << (next.matched ? "" : " (no matching group, persisted last level)") << '\n';
    } catch (const Error& e) {
        std::cerr << "forecast_belgium: " << e.what() << '\n';
        return 2;
    }
}
