#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "fuzzify.hpp"
#include "partition.hpp"

namespace mbfts {

/// Order in which the labeled years are walked when forming relationships.
/// `descending` follows the newest-first listing of the published data
/// table and exists only to reproduce its group listing.
enum class SeriesDirection { ascending, descending };

enum class Fallback { persist, error };

struct WeightedValue {
    double weight = 0.0;
    double value = 0.0;
};

/// sum(w) / sum(w / v).  Every value must be positive.
inline double weighted_harmonic_mean(std::span<const WeightedValue> terms) {
    if (terms.empty()) throw InvalidArgument("harmonic mean of no terms");
    double weight_sum = 0.0;
    double inverse_sum = 0.0;
    for (const auto& t : terms) {
        if (!(t.value > 0.0))
            throw DomainError("harmonic mean needs positive values, got " + std::to_string(t.value));
        weight_sum += t.weight;
        inverse_sum += t.weight / t.value;
    }
    return weight_sum / inverse_sum;
}

/// Defuzzified value t_j of label j: the weighted harmonic mean of the
/// midpoints of A_{j-1}, A_j, A_{j+1} with weights 0.5, 1, 0.5.  The edge
/// labels drop their missing neighbour.
inline double defuzz_centroid(const Partition& partition, Label j) {
    const int n = partition.size();
    if (n < 2) throw InvalidArgument("defuzzification needs at least 2 intervals");
    if (j < 1 || j > n)
        throw InvalidArgument("label " + std::to_string(j) + " outside 1.." + std::to_string(n));

    std::vector<WeightedValue> terms;
    for (const auto& m : membership_vector(partition, j)) {
        const double a = partition.midpoint(m.label);
        if (!(a > 0.0))
            throw DomainError("harmonic defuzzification needs positive midpoints; a_" +
                              std::to_string(m.label) + " = " + std::to_string(a));
        terms.push_back({m.grade, a});
    }
    return weighted_harmonic_mean(terms);
}

class DefuzzTable {
public:
    DefuzzTable() = default;
    DefuzzTable(std::vector<double> values, std::uint64_t partition_ref)
        : values_(std::move(values)), partition_ref_(partition_ref) {}

    double at(Label j) const {
        if (j < 1 || j > size())
            throw InvalidArgument("label " + std::to_string(j) + " outside 1.." + std::to_string(size()));
        return values_[static_cast<std::size_t>(j - 1)];
    }
    std::span<const double> values() const noexcept { return values_; }
    int size() const noexcept { return static_cast<int>(values_.size()); }
    std::uint64_t partition_ref() const noexcept { return partition_ref_; }

    friend bool operator==(const DefuzzTable&, const DefuzzTable&) = default;

private:
    std::vector<double> values_;
    std::uint64_t partition_ref_ = 0;
};

inline DefuzzTable build_defuzz_table(const Partition& partition) {
    std::vector<double> t;
    t.reserve(static_cast<std::size_t>(partition.size()));
    for (Label j = 1; j <= partition.size(); ++j) t.push_back(defuzz_centroid(partition, j));
    return DefuzzTable(std::move(t), partition.fingerprint());
}

using Antecedent = std::vector<Label>;

struct Relationship {
    Antecedent antecedent;
    Label consequent = 0;

    friend bool operator==(const Relationship&, const Relationship&) = default;
};

/// Order-k fuzzy logical relationship groups.  Groups are keyed by their
/// antecedent tuple and iterate in lexicographic antecedent order.
struct FlrgModel {
    int k = 0;
    SeriesDirection direction = SeriesDirection::ascending;
    std::vector<Relationship> relationships;  // before grouping, in walk order
    std::map<Antecedent, std::set<Label>> groups;

    const std::set<Label>* find(std::span<const Label> antecedent) const {
        auto it = groups.find(Antecedent(antecedent.begin(), antecedent.end()));
        return it == groups.end() ? nullptr : &it->second;
    }

    friend bool operator==(const FlrgModel&, const FlrgModel&) = default;
};

inline FlrgModel build_flrg_model(const FuzzifiedSeries& fuzzified, int k,
                                  SeriesDirection direction = SeriesDirection::ascending) {
    if (k < 1) throw InvalidArgument("order k must be >= 1, got " + std::to_string(k));
    if (fuzzified.size() <= static_cast<std::size_t>(k))
        throw InsufficientData("order-" + std::to_string(k) + " model needs at least " +
                               std::to_string(k + 1) + " observations, got " +
                               std::to_string(fuzzified.size()));

    auto labels = fuzzified.label_sequence();
    if (direction == SeriesDirection::descending) std::ranges::reverse(labels);

    FlrgModel model;
    model.k = k;
    model.direction = direction;
    model.relationships.reserve(labels.size() - static_cast<std::size_t>(k));
    for (std::size_t i = static_cast<std::size_t>(k); i < labels.size(); ++i) {
        Relationship r{Antecedent(labels.begin() + static_cast<std::ptrdiff_t>(i) - k,
                                  labels.begin() + static_cast<std::ptrdiff_t>(i)),
                       labels[i]};
        model.groups[r.antecedent].insert(r.consequent);
        model.relationships.push_back(std::move(r));
    }
    return model;
}

struct InSampleRow {
    int year = 0;
    Label label = 0;
    double midpoint = 0.0;
    double forecast = 0.0;
};

namespace detail {

inline void check_consistent(const Partition& partition, const DefuzzTable& table,
                             const FuzzifiedSeries& fuzzified) {
    const auto fp = partition.fingerprint();
    if (table.partition_ref() != fp || table.size() != partition.size())
        throw Inconsistency("defuzzification table was built from a different partition");
    if (fuzzified.partition_ref != fp)
        throw Inconsistency("fuzzified series was built from a different partition");
}

} // namespace detail

/// Each year's forecast is the defuzzified value of its own label.
inline std::vector<InSampleRow> reconstruct_in_sample(const Partition& partition,
                                                      const DefuzzTable& table,
                                                      const FuzzifiedSeries& fuzzified) {
    detail::check_consistent(partition, table, fuzzified);
    std::vector<InSampleRow> rows;
    rows.reserve(fuzzified.size());
    for (const auto& l : fuzzified.labels)
        rows.push_back({l.year, l.label, partition.midpoint(l.label), table.at(l.label)});
    return rows;
}

struct Forecast {
    double value = 0.0;
    bool matched = false;
};

/// Next-step forecast from the last k labels.  A known antecedent yields the
/// mean defuzzified value of its consequents; otherwise `fallback` decides.
inline Forecast forecast_next(const FlrgModel& model, const DefuzzTable& table,
                              std::span<const Label> recent, Fallback fallback) {
    if (recent.size() != static_cast<std::size_t>(model.k))
        throw InvalidArgument("expected " + std::to_string(model.k) + " recent labels, got " +
                              std::to_string(recent.size()));
    for (Label l : recent) (void)table.at(l);

    if (const auto* consequents = model.find(recent)) {
        double sum = 0.0;
        for (Label c : *consequents) sum += table.at(c);
        return {sum / static_cast<double>(consequents->size()), true};
    }
    if (fallback == Fallback::error) {
        std::string key;
        for (Label l : recent) key += (key.empty() ? "" : ",") + std::to_string(l);
        throw NoMatch("no relationship group for antecedent (" + key + ")");
    }
    return {table.at(recent.back()), false};
}

} // namespace mbfts
