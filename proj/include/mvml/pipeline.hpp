#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <mvml/clustering.hpp>
#include <mvml/graph.hpp>
#include <mvml/metrics.hpp>
#include <mvml/optimizer.hpp>

namespace mvml {

struct DatasetSpec {
    std::vector<std::string> view_paths;
    BandwidthPolicy bandwidth = BandwidthPolicy::median();
    int subsample = 1;                // keep every subsample-th frame
    std::string ground_truth_path;    // empty when absent
};

struct GroundTruthEvent {
    Index start = 0;
    Index end = 0;  // inclusive
    std::string label;
};

struct GroundTruthEvents {
    std::vector<GroundTruthEvent> events;
};

struct SummarizeOptions {
    OptimizerConfig opt;
    int restarts = 10;
    int kmeans_max_iters = 100;
    bool row_normalize = true;
    ViewSelection view_selection = ViewSelection::MeanSimilarity;
};

struct RepresentativeEntry {
    int cluster = 0;
    Index frame = 0;  // original (pre-subsampling) frame index
    int view = 0;
};

// Resolved run configuration, echoed into the manifest so a run can be
// reproduced from its output alone.
struct ManifestConfig {
    std::string bandwidth;       // "median" or "fixed"
    int subsample = 1;
    int restarts = 10;
    int kmeans_max_iters = 100;
    bool row_normalize = true;
    std::string view_selection;  // "mean_similarity" or "first_view"
    int max_iters = 100;
    double tol = 1e-8;
    bool converged = false;
    int iterations = 0;
};

struct SummaryManifest {
    int schema = 1;
    Index n = 0;  // frames after subsampling
    int k = 0;
    int c = 0;
    double gamma = 1.0;
    std::vector<double> sigma_per_view;
    std::vector<double> weights;
    std::vector<double> objective_trace;
    std::vector<int> labels;
    std::vector<RepresentativeEntry> representatives;
    std::uint64_t seed = 0;
    std::string tool_version;
    ManifestConfig config;
};

std::vector<FeatureMatrix> load_views(const DatasetSpec& spec);

GroundTruthEvents load_ground_truth(const std::string& path);

// Weight learning without the clustering tail: per-view graphs, then the
// alternating optimizer.
struct MetricReport {
    Index n = 0;
    int k = 0;
    int c = 0;
    double gamma = 1.0;
    std::vector<double> sigma_per_view;
    std::vector<double> weights;
    std::vector<double> objective_trace;
    bool converged = false;
    int iterations = 0;
    std::uint64_t seed = 0;
};

MetricReport learn_metric_views(const std::vector<FeatureMatrix>& views,
                                const BandwidthPolicy& bandwidth, int subsample,
                                const OptimizerConfig& config);

// Runs the full chain on in-memory views: subsample, per-view kernel and
// trace-normalized Laplacian, weight learning, spectral clustering on the
// combined Laplacian, one representative frame per cluster with a chosen
// view. Errors are rethrown with the failing stage name attached.
SummaryManifest summarize_views(const std::vector<FeatureMatrix>& views,
                                const BandwidthPolicy& bandwidth, int subsample,
                                const SummarizeOptions& options);

SummaryManifest summarize(const DatasetSpec& spec, const SummarizeOptions& options);

// precision = fraction of representative frames lying inside some event;
// recall = fraction of events containing at least one representative frame.
std::pair<double, double> eval_event_pr(const SummaryManifest& manifest,
                                        const GroundTruthEvents& gt);

std::pair<double, double> eval_clustering(const std::vector<int>& predicted,
                                          const std::vector<int>& truth);

std::string manifest_to_json(const SummaryManifest& manifest);
SummaryManifest manifest_from_json(const std::string& text);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace mvml
