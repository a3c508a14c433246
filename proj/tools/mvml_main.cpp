#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <mvml/pipeline.hpp>
#include <mvml/synthbench.hpp>

namespace {

using nlohmann::json;

struct SummarizeArgs {
    std::vector<std::string> views;
    int clusters = 0;
    double gamma = 1.0;
    double sigma = 0.0;  // 0 means median policy
    bool sigma_given = false;
    int subsample = 1;
    int restarts = 10;
    int max_iters = 100;
    double tol = 1e-8;
    std::uint64_t seed = 0;
    bool row_normalize = true;
    std::string view_selection = "mean_similarity";
    std::string out;
};

struct EvalArgs {
    std::string manifest;
    std::string events;
    std::string labels;
    std::string out;
};

struct BenchArgs {
    int views = 3;
    int clusters = 0;
    int points_per_cluster = 40;
    int latent_dim = 8;
    double noise_sigma = 1.0;
    std::vector<int> corrupt;
    double separation = 10.0;
    int seeds = 20;
    std::uint64_t seed = 0;
    double gamma = 1.0;
    int max_iters = 100;
    double tol = 1e-8;
    int restarts = 10;
    std::string out;
    std::string csv;
};

void emit(const std::string& out, const std::string& text) {
    if (out.empty())
        std::cout << text;
    else
        mvml::write_text_file(out, text);
}

mvml::BandwidthPolicy bandwidth_of(const SummarizeArgs& a) {
    return a.sigma_given ? mvml::BandwidthPolicy::fixed(a.sigma)
                         : mvml::BandwidthPolicy::median();
}

void add_common_options(CLI::App* sub, SummarizeArgs& a) {
    sub->add_option("--view", a.views, "per-view CSV feature file (repeatable)")->required();
    sub->add_option("--clusters,-c", a.clusters, "number of clusters / summary length")
        ->required()
        ->check(CLI::Range(2, 1000000));
    sub->add_option("--gamma", a.gamma, "disagreement weight")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--sigma", a.sigma,
                    "fixed RBF bandwidth (default: median pairwise distance)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--subsample", a.subsample, "keep every s-th frame")
        ->capture_default_str()
        ->check(CLI::Range(1, 1000000));
    sub->add_option("--max-iters", a.max_iters, "optimizer iteration cap")
        ->capture_default_str()
        ->check(CLI::Range(1, 1000000));
    sub->add_option("--tol", a.tol, "optimizer convergence tolerance")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", a.seed, "RNG seed")->envname("MVML_SEED")->capture_default_str();
    sub->add_option("--out,-o", a.out, "output file (default: stdout)");
}

int cmd_summarize(const SummarizeArgs& a, bool verbose) {
    mvml::DatasetSpec spec;
    spec.view_paths = a.views;
    spec.bandwidth = bandwidth_of(a);
    spec.subsample = a.subsample;

    mvml::SummarizeOptions options;
    options.opt.clusters = a.clusters;
    options.opt.gamma = a.gamma;
    options.opt.max_iters = a.max_iters;
    options.opt.tol = a.tol;
    options.opt.seed = a.seed;
    options.restarts = a.restarts;
    options.row_normalize = a.row_normalize;
    options.view_selection = a.view_selection == "first_view"
                                 ? mvml::ViewSelection::FirstView
                                 : mvml::ViewSelection::MeanSimilarity;

    const mvml::SummaryManifest manifest = mvml::summarize(spec, options);
    emit(a.out, mvml::manifest_to_json(manifest));

    if (verbose) {
        std::cerr << "weights:";
        for (std::size_t k = 0; k < manifest.weights.size(); ++k)
            std::cerr << "  view" << k << "=" << manifest.weights[k];
        std::cerr << "\nrepresentatives (cluster, frame, view):\n";
        for (const mvml::RepresentativeEntry& r : manifest.representatives)
            std::cerr << "  " << r.cluster << "  " << r.frame << "  " << r.view << "\n";
        std::cerr << "objective iterations: " << manifest.config.iterations
                  << (manifest.config.converged ? " (converged)" : " (iteration cap)") << "\n";
    }
    return 0;
}

int cmd_learn_metric(const SummarizeArgs& a, bool verbose) {
    mvml::DatasetSpec spec;
    spec.view_paths = a.views;
    spec.bandwidth = bandwidth_of(a);
    spec.subsample = a.subsample;

    mvml::OptimizerConfig config;
    config.clusters = a.clusters;
    config.gamma = a.gamma;
    config.max_iters = a.max_iters;
    config.tol = a.tol;
    config.seed = a.seed;

    const std::vector<mvml::FeatureMatrix> views = mvml::load_views(spec);
    const mvml::MetricReport report =
        mvml::learn_metric_views(views, spec.bandwidth, spec.subsample, config);

    json doc{{"schema", 1},
             {"n", report.n},
             {"k", report.k},
             {"c", report.c},
             {"gamma", report.gamma},
             {"sigma_per_view", report.sigma_per_view},
             {"weights", report.weights},
             {"objective_trace", report.objective_trace},
             {"converged", report.converged},
             {"iterations", report.iterations},
             {"seed", report.seed},
             {"tool_version", mvml::kToolVersion},
             {"config",
              {{"bandwidth", spec.bandwidth.is_median() ? "median" : "fixed"},
               {"subsample", spec.subsample},
               {"max_iters", config.max_iters},
               {"tol", config.tol}}}};
    emit(a.out, doc.dump(2) + "\n");

    if (verbose) {
        std::cerr << "weights:";
        for (std::size_t k = 0; k < report.weights.size(); ++k)
            std::cerr << "  view" << k << "=" << report.weights[k];
        std::cerr << "\nobjective trace (" << report.objective_trace.size() << " entries): ";
        for (double v : report.objective_trace) std::cerr << v << " ";
        std::cerr << "\n";
    }
    return 0;
}

std::vector<int> load_label_file(const std::string& path) {
    const std::string text = mvml::read_text_file(path);
    std::vector<int> labels;
    std::string token;
    int line_no = 1;
    const auto flush = [&](bool end_of_line) {
        std::string t = token;
        token.clear();
        const auto a = t.find_first_not_of(" \t\r");
        if (a == std::string::npos) {
            if (!end_of_line)
                throw mvml::ParseError(path + ": line " + std::to_string(line_no) +
                                       ": empty label");
            return;
        }
        const auto b = t.find_last_not_of(" \t\r");
        t = t.substr(a, b - a + 1);
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(t, &used);
        } catch (const std::exception&) {
            used = std::string::npos;
        }
        if (used != t.size())
            throw mvml::ParseError(path + ": line " + std::to_string(line_no) +
                                   ": cannot parse '" + t + "' as an integer label");
        labels.push_back(value);
    };
    for (char ch : text) {
        if (ch == '\n') {
            flush(true);
            ++line_no;
        } else if (ch == ',') {
            flush(false);
        } else {
            token.push_back(ch);
        }
    }
    flush(true);
    if (labels.empty()) throw mvml::ParseError(path + ": no labels");
    return labels;
}

int cmd_eval(const EvalArgs& a, bool verbose) {
    if (a.events.empty() && a.labels.empty())
        throw mvml::Error(mvml::ErrorKind::invalid_argument,
                          "eval needs --events and/or --labels");

    const mvml::SummaryManifest manifest =
        mvml::manifest_from_json(mvml::read_text_file(a.manifest));

    json doc{{"schema", 1}};
    json config{{"manifest", a.manifest}};
    if (!a.events.empty()) {
        const mvml::GroundTruthEvents gt = mvml::load_ground_truth(a.events);
        if (gt.events.empty())
            throw mvml::Error(mvml::ErrorKind::invalid_argument,
                              a.events + " has no events; recall is undefined");
        if (manifest.representatives.empty())
            throw mvml::Error(mvml::ErrorKind::invalid_argument,
                              "manifest has no representatives; precision is undefined");
        const auto [precision, recall] = mvml::eval_event_pr(manifest, gt);
        doc["precision"] = precision;
        doc["recall"] = recall;
        config["events"] = a.events;
        if (verbose)
            std::cerr << "precision " << precision << "  recall " << recall << "\n";
    }
    if (!a.labels.empty()) {
        const std::vector<int> truth = load_label_file(a.labels);
        const auto [ari, nmi] = mvml::eval_clustering(manifest.labels, truth);
        doc["ari"] = ari;
        doc["nmi"] = nmi;
        config["labels"] = a.labels;
        if (verbose) std::cerr << "ari " << ari << "  nmi " << nmi << "\n";
    }
    doc["config"] = config;
    emit(a.out, doc.dump(2) + "\n");
    return 0;
}

int cmd_bench(const BenchArgs& a, bool verbose) {
    mvml::SynthConfig cfg;
    cfg.clusters = a.clusters;
    cfg.points_per_cluster = a.points_per_cluster;
    cfg.latent_dim = a.latent_dim;
    cfg.views = a.views;
    cfg.noise_sigma = a.noise_sigma;
    cfg.corrupted_views = a.corrupt;
    cfg.cluster_separation = a.separation;
    cfg.seed = a.seed;

    mvml::OptimizerConfig opt;
    opt.clusters = a.clusters;
    opt.gamma = a.gamma;
    opt.max_iters = a.max_iters;
    opt.tol = a.tol;
    opt.seed = a.seed;

    std::vector<std::uint64_t> seeds;
    for (int i = 0; i < a.seeds; ++i) seeds.push_back(a.seed + static_cast<std::uint64_t>(i));

    const mvml::BenchReport report = mvml::run_benchmark(cfg, seeds, opt, a.restarts);
    emit(a.out, mvml::bench_report_to_json(report));
    if (!a.csv.empty()) mvml::write_text_file(a.csv, mvml::bench_report_to_csv(report));

    if (verbose) {
        std::cerr << "method        mean ARI   std ARI    mean NMI   std NMI\n";
        for (const std::string& method : report.methods) {
            const mvml::MethodSummary& s = report.summary.at(method);
            std::cerr << method;
            for (std::size_t pad = method.size(); pad < 14; ++pad) std::cerr << ' ';
            std::cerr << s.mean_ari << "  " << s.std_ari << "  " << s.mean_nmi << "  "
                      << s.std_nmi << "\n";
        }
        if (report.failed > 0) std::cerr << "failed instances: " << report.failed << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-view metric learning, spectral summarization, and benchmarks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", mvml::kToolVersion);
    bool verbose = false;
    app.add_flag("--verbose", verbose, "print human-readable tables to stderr");

    SummarizeArgs sum_args;
    CLI::App* sum = app.add_subcommand(
        "summarize", "learn view weights, cluster, and pick representative frames");
    sum->fallthrough();
    add_common_options(sum, sum_args);
    sum->add_option("--restarts", sum_args.restarts, "k-means restarts")
        ->capture_default_str()
        ->check(CLI::Range(1, 1000000));
    sum->add_flag("--row-normalize,!--no-row-normalize", sum_args.row_normalize,
                  "normalize embedding rows before k-means");
    sum->add_option("--view-selection", sum_args.view_selection,
                    "how to pick the view shown for each representative")
        ->capture_default_str()
        ->check(CLI::IsMember({"mean_similarity", "first_view"}));

    SummarizeArgs lm_args;
    CLI::App* lm = app.add_subcommand("learn-metric",
                                      "learn view weights and report the objective trace");
    lm->fallthrough();
    add_common_options(lm, lm_args);

    EvalArgs eval_args;
    CLI::App* ev = app.add_subcommand("eval", "score a manifest against ground truth");
    ev->fallthrough();
    ev->add_option("--manifest", eval_args.manifest, "summary manifest JSON")->required();
    ev->add_option("--events", eval_args.events, "ground-truth events JSON");
    ev->add_option("--labels", eval_args.labels, "ground-truth labels file (one per line)");
    ev->add_option("--out,-o", eval_args.out, "output file (default: stdout)");

    BenchArgs bench_args;
    CLI::App* bench =
        app.add_subcommand("bench", "synthetic multi-view benchmark against baselines");
    bench->fallthrough();
    bench->add_option("--views", bench_args.views, "number of views")
        ->capture_default_str()
        ->check(CLI::Range(1, 20));
    bench->add_option("--clusters,-c", bench_args.clusters, "planted cluster count")
        ->required()
        ->check(CLI::Range(2, 1000000));
    bench->add_option("--points-per-cluster", bench_args.points_per_cluster, "points per cluster")
        ->capture_default_str()
        ->check(CLI::Range(1, 1000000));
    bench->add_option("--latent-dim", bench_args.latent_dim, "latent space dimension")
        ->capture_default_str()
        ->check(CLI::Range(1, 1000000));
    bench->add_option("--noise-sigma", bench_args.noise_sigma,
                      "cluster spread and per-view noise level")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    bench->add_option("--corrupt", bench_args.corrupt,
                      "view index replaced by pure noise (repeatable)");
    bench->add_option("--separation", bench_args.separation, "minimum distance between centers")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    bench->add_option("--seeds", bench_args.seeds, "number of benchmark instances")
        ->capture_default_str()
        ->check(CLI::Range(1, 1000000));
    bench->add_option("--seed", bench_args.seed, "master seed; instance i uses seed + i")
        ->envname("MVML_SEED")
        ->capture_default_str();
    bench->add_option("--gamma", bench_args.gamma, "disagreement weight")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    bench->add_option("--max-iters", bench_args.max_iters, "optimizer iteration cap")
        ->capture_default_str()
        ->check(CLI::Range(1, 1000000));
    bench->add_option("--tol", bench_args.tol, "optimizer convergence tolerance")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    bench->add_option("--restarts", bench_args.restarts, "k-means restarts")
        ->capture_default_str()
        ->check(CLI::Range(1, 1000000));
    bench->add_option("--out,-o", bench_args.out, "report file (default: stdout)");
    bench->add_option("--csv", bench_args.csv, "also write per-seed metrics as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        std::cerr << "error: " << e.what() << "\n";
        std::cerr << "Run with --help for usage.\n";
        return 1;
    }

    sum_args.sigma_given = sum->count("--sigma") > 0;
    lm_args.sigma_given = lm->count("--sigma") > 0;

    try {
        if (*sum) return cmd_summarize(sum_args, verbose);
        if (*lm) return cmd_learn_metric(lm_args, verbose);
        if (*ev) return cmd_eval(eval_args, verbose);
        if (*bench) return cmd_bench(bench_args, verbose);
    } catch (const mvml::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case mvml::ErrorKind::invalid_argument:
                return 1;
            case mvml::ErrorKind::io:
                return 2;
            case mvml::ErrorKind::numeric:
                return 3;
        }
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
