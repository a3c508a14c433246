#include <mvml/metrics.hpp>

#include <cmath>
#include <map>

namespace mvml {

namespace {

// Contingency table over the label values that actually occur.
struct Contingency {
    std::map<int, std::map<int, long long>> cells;
    std::map<int, long long> row_sums;
    std::map<int, long long> col_sums;
    long long n = 0;
};

Contingency build_contingency(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw DimensionError("label vectors differ in length");
    if (a.empty()) throw InvalidParameterError("label vectors are empty");
    Contingency t;
    t.n = static_cast<long long>(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        ++t.cells[a[i]][b[i]];
        ++t.row_sums[a[i]];
        ++t.col_sums[b[i]];
    }
    return t;
}

double pairs(long long m) { return 0.5 * static_cast<double>(m) * static_cast<double>(m - 1); }

}  // namespace

double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
    const Contingency t = build_contingency(a, b);

    double sum_cells = 0.0;
    for (const auto& [_, row] : t.cells)
        for (const auto& [_, m] : row) sum_cells += pairs(m);
    double sum_rows = 0.0;
    for (const auto& [_, m] : t.row_sums) sum_rows += pairs(m);
    double sum_cols = 0.0;
    for (const auto& [_, m] : t.col_sums) sum_cols += pairs(m);

    const double total = pairs(t.n);
    const double expected = sum_rows * sum_cols / total;
    const double max_index = 0.5 * (sum_rows + sum_cols);
    const double denom = max_index - expected;
    // Both partitions trivial (all-in-one or all singletons): perfect agreement.
    if (denom == 0.0) return 1.0;
    return (sum_cells - expected) / denom;
}

double normalized_mutual_information(const std::vector<int>& a, const std::vector<int>& b) {
    const Contingency t = build_contingency(a, b);
    const double n = static_cast<double>(t.n);

    double mi = 0.0;
    for (const auto& [i, row] : t.cells) {
        for (const auto& [j, m] : row) {
            const double pij = static_cast<double>(m) / n;
            const double pi = static_cast<double>(t.row_sums.at(i)) / n;
            const double pj = static_cast<double>(t.col_sums.at(j)) / n;
            mi += pij * std::log(pij / (pi * pj));
        }
    }

    double ha = 0.0;
    for (const auto& [_, m] : t.row_sums) {
        const double p = static_cast<double>(m) / n;
        ha -= p * std::log(p);
    }
    double hb = 0.0;
    for (const auto& [_, m] : t.col_sums) {
        const double p = static_cast<double>(m) / n;
        hb -= p * std::log(p);
    }

    const double mean_entropy = 0.5 * (ha + hb);
    if (mean_entropy == 0.0) return 1.0;  // both single-cluster
    return std::max(0.0, mi / mean_entropy);
}

EventPr event_precision_recall(const std::vector<Index>& frames,
                               const std::vector<EventWindow>& events) {
    if (frames.empty()) throw InvalidParameterError("no frames selected");
    if (events.empty()) throw InvalidParameterError("no events given");
    for (const EventWindow& e : events)
        if (e.end < e.start)
            throw InvalidParameterError("event with end " + std::to_string(e.end) +
                                        " before start " + std::to_string(e.start));

    Index hit_frames = 0;
    std::vector<char> event_hit(events.size(), 0);
    for (Index f : frames) {
        bool inside = false;
        for (std::size_t j = 0; j < events.size(); ++j) {
            if (f >= events[j].start && f <= events[j].end) {
                inside = true;
                event_hit[j] = 1;
            }
        }
        if (inside) ++hit_frames;
    }

    Index hit_events = 0;
    for (char h : event_hit) hit_events += h;

    EventPr pr;
    pr.precision = static_cast<double>(hit_frames) / static_cast<double>(frames.size());
    pr.recall = static_cast<double>(hit_events) / static_cast<double>(events.size());
    return pr;
}

}  // namespace mvml
