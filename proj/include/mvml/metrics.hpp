#pragma once

#include <vector>

#include <mvml/errors.hpp>
#include <mvml/types.hpp>

namespace mvml {

// Chance-adjusted agreement between two labelings of the same items.
// 1.0 for identical partitions (up to relabeling), near 0 for independent
// ones; can be negative for systematic disagreement.
double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b);

// Mutual information normalized by the arithmetic mean of the entropies.
// Returns 1.0 when both partitions are single-cluster (zero entropy).
double normalized_mutual_information(const std::vector<int>& a, const std::vector<int>& b);

struct EventWindow {
    Index start = 0;
    Index end = 0;  // inclusive
};

struct EventPr {
    double precision = 0.0;  // fraction of selected frames inside some event
    double recall = 0.0;     // fraction of events containing a selected frame
};

EventPr event_precision_recall(const std::vector<Index>& frames,
                               const std::vector<EventWindow>& events);

}  // namespace mvml
