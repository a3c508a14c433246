#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <mvml/graph.hpp>
#include <mvml/optimizer.hpp>

namespace mvml {

struct SynthConfig {
    int clusters = 5;
    int points_per_cluster = 40;
    int latent_dim = 8;
    int views = 3;
    double noise_sigma = 1.0;           // latent cluster spread and per-view noise
    std::vector<int> corrupted_views;   // replaced by pure noise, no cluster signal
    double cluster_separation = 10.0;   // minimum pairwise center distance
    std::uint64_t seed = 0;
};

struct LatentData {
    Matrix points;            // n = clusters * points_per_cluster rows
    std::vector<int> labels;  // planted cluster of each row
    Matrix centers;           // clusters x latent_dim
};

// Cluster centers are rejection-sampled to pairwise distance >= separation;
// points are Gaussian around their center with spread noise_sigma.
LatentData gen_latent(const SynthConfig& cfg);

// Clean views are isometries of the latent points (random orthogonal map plus
// translation) with additive Gaussian noise; corrupted views are pure noise
// of the same shape.
std::vector<FeatureMatrix> gen_views(const LatentData& latent, const SynthConfig& cfg);

struct BenchInstance {
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;                         // set when ok == false
    std::vector<double> mu;                    // weights learned by "ours"
    std::map<std::string, double> ari;         // method name -> score
    std::map<std::string, double> nmi;
    std::map<std::string, double> runtime_sec;
};

struct MethodSummary {
    double mean_ari = 0.0;
    double std_ari = 0.0;
    double mean_nmi = 0.0;
    double std_nmi = 0.0;
};

struct BenchReport {
    SynthConfig config;
    OptimizerConfig opt;  // resolved optimizer settings used for "ours"
    int restarts = 10;
    std::vector<std::string> methods;  // ours, uniform, view0..view{K-1}, concat
    std::vector<BenchInstance> instances;
    std::map<std::string, MethodSummary> summary;  // over instances with ok == true
    int failed = 0;
};

// Per seed: generate a dataset, then cluster it with the learned combination,
// a fixed uniform combination, each single view, and concatenated features.
// A failing instance is recorded with its error and excluded from summary
// statistics, which always cover the same instance set for every method.
BenchReport run_benchmark(const SynthConfig& cfg, const std::vector<std::uint64_t>& seeds,
                          const OptimizerConfig& opt, int restarts = 10);

std::string bench_report_to_json(const BenchReport& report);
std::string bench_report_to_csv(const BenchReport& report);

}  // namespace mvml
