#include <mvml/pipeline.hpp>

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace mvml {

namespace {

using nlohmann::json;

template <typename F>
auto run_stage(const char* name, F&& body) -> decltype(body()) {
    try {
        return body();
    } catch (const StageError&) {
        throw;  // already tagged by an inner stage
    } catch (const Error& e) {
        throw StageError(e.kind(), name, e.what());
    }
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool parse_cell(const std::string& cell, double& out) {
    const std::string t = trim(cell);
    if (t.empty()) return false;
    errno = 0;
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return errno == 0 && end == t.c_str() + t.size();
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    cells.push_back(cur);
    return cells;
}

FeatureMatrix load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);

    std::vector<std::vector<double>> rows;
    std::string line;
    int line_no = 0;
    bool header_checked = false;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const std::vector<std::string> cells = split_csv_line(line);

        if (!header_checked) {
            header_checked = true;
            bool all_numeric = true;
            double v;
            for (const std::string& c : cells)
                if (!parse_cell(c, v)) {
                    all_numeric = false;
                    break;
                }
            if (!all_numeric) continue;  // header line
        }

        if (width == 0) width = cells.size();
        if (cells.size() != width)
            throw ParseError(path + ": row " + std::to_string(line_no) + " has " +
                             std::to_string(cells.size()) + " columns, expected " +
                             std::to_string(width));

        std::vector<double> row(width);
        for (std::size_t j = 0; j < width; ++j) {
            if (!parse_cell(cells[j], row[j]))
                throw ParseError(path + ": row " + std::to_string(line_no) + ", column " +
                                 std::to_string(j + 1) + ": cannot parse '" + trim(cells[j]) +
                                 "' as a number");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(path + ": no data rows");

    FeatureMatrix x;
    x.data.resize(static_cast<Index>(rows.size()), static_cast<Index>(width));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < width; ++j)
            x.data(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    return x;
}

FeatureMatrix subsample_rows(const FeatureMatrix& x, int s) {
    if (s == 1) return x;
    const Index kept = (x.rows() - 1) / s + 1;
    FeatureMatrix out;
    out.data.resize(kept, x.cols());
    for (Index i = 0; i < kept; ++i) out.data.row(i) = x.data.row(i * s);
    return out;
}

std::string view_selection_name(ViewSelection v) {
    return v == ViewSelection::MeanSimilarity ? "mean_similarity" : "first_view";
}

json manifest_json(const SummaryManifest& m) {
    json reps = json::array();
    for (const RepresentativeEntry& r : m.representatives)
        reps.push_back({{"cluster", r.cluster}, {"frame", r.frame}, {"view", r.view}});
    json config{{"bandwidth", m.config.bandwidth},
                {"subsample", m.config.subsample},
                {"restarts", m.config.restarts},
                {"kmeans_max_iters", m.config.kmeans_max_iters},
                {"row_normalize", m.config.row_normalize},
                {"view_selection", m.config.view_selection},
                {"max_iters", m.config.max_iters},
                {"tol", m.config.tol},
                {"converged", m.config.converged},
                {"iterations", m.config.iterations}};
    return json{{"schema", m.schema},
                {"n", m.n},
                {"k", m.k},
                {"c", m.c},
                {"gamma", m.gamma},
                {"sigma_per_view", m.sigma_per_view},
                {"weights", m.weights},
                {"objective_trace", m.objective_trace},
                {"labels", m.labels},
                {"representatives", reps},
                {"seed", m.seed},
                {"tool_version", m.tool_version},
                {"config", config}};
}

}  // namespace

std::vector<FeatureMatrix> load_views(const DatasetSpec& spec) {
    if (spec.view_paths.empty()) throw InvalidParameterError("no view files given");
    std::set<std::string> distinct(spec.view_paths.begin(), spec.view_paths.end());
    if (distinct.size() != spec.view_paths.size())
        throw InvalidParameterError("duplicate view file paths");
    if (spec.subsample < 1) throw InvalidParameterError("subsample must be at least 1");

    std::vector<FeatureMatrix> views;
    views.reserve(spec.view_paths.size());
    for (const std::string& path : spec.view_paths) views.push_back(load_csv(path));

    const Index n = views.front().rows();
    for (std::size_t k = 1; k < views.size(); ++k)
        if (views[k].rows() != n)
            throw SynchronizationError(spec.view_paths[k] + " has " +
                                       std::to_string(views[k].rows()) + " frames, expected " +
                                       std::to_string(n) + " (views must be synchronized)");
    return views;
}

GroundTruthEvents load_ground_truth(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("events") || !doc["events"].is_array())
        throw ParseError(path + ": expected an object with an \"events\" array");

    GroundTruthEvents gt;
    for (const json& item : doc["events"]) {
        if (!item.is_object() || !item.contains("start") || !item.contains("end") ||
            !item.contains("label") || !item["start"].is_number_integer() ||
            !item["end"].is_number_integer() || !item["label"].is_string())
            throw ParseError(path + ": each event needs integer start/end and a string label");
        GroundTruthEvent e;
        e.start = item["start"].get<Index>();
        e.end = item["end"].get<Index>();
        e.label = item["label"].get<std::string>();
        if (e.start < 0 || e.end < e.start)
            throw ParseError(path + ": event [" + std::to_string(e.start) + ", " +
                             std::to_string(e.end) + "] is not a well-formed interval");
        if (e.label.empty()) throw ParseError(path + ": event label must be non-empty");
        gt.events.push_back(std::move(e));
    }
    return gt;
}

MetricReport learn_metric_views(const std::vector<FeatureMatrix>& views,
                                const BandwidthPolicy& bandwidth, int subsample,
                                const OptimizerConfig& config) {
    if (views.empty()) throw InvalidParameterError("no views given");
    if (subsample < 1) throw InvalidParameterError("subsample must be at least 1");

    std::vector<FeatureMatrix> sampled;
    sampled.reserve(views.size());
    for (const FeatureMatrix& v : views) sampled.push_back(subsample_rows(v, subsample));

    MetricReport report;
    report.k = static_cast<int>(views.size());
    report.c = config.clusters;
    report.gamma = config.gamma;
    report.seed = config.seed;

    std::vector<Laplacian> laplacians;
    run_stage("graph", [&] {
        for (const FeatureMatrix& v : sampled) {
            KernelMatrix g = rbf_kernel(v, bandwidth);
            report.sigma_per_view.push_back(g.sigma);
            laplacians.push_back(trace_normalize(normalized_laplacian(g)));
        }
        return 0;
    });
    OptimizerResult opt =
        run_stage("optimize", [&] { return alternate(LaplacianBundle(laplacians), config); });

    report.n = sampled.front().rows();
    report.weights.assign(opt.weights.mu.data(), opt.weights.mu.data() + opt.weights.mu.size());
    report.objective_trace = opt.objective_trace;
    report.converged = opt.converged;
    report.iterations = opt.iterations;
    return report;
}

SummaryManifest summarize_views(const std::vector<FeatureMatrix>& views,
                                const BandwidthPolicy& bandwidth, int subsample,
                                const SummarizeOptions& options) {
    if (views.empty()) throw InvalidParameterError("no views given");
    if (subsample < 1) throw InvalidParameterError("subsample must be at least 1");
    const int k = static_cast<int>(views.size());

    std::vector<FeatureMatrix> sampled;
    sampled.reserve(views.size());
    for (const FeatureMatrix& v : views) sampled.push_back(subsample_rows(v, subsample));

    std::vector<KernelMatrix> kernels;
    kernels.reserve(views.size());
    std::vector<Laplacian> laplacians;
    laplacians.reserve(views.size());
    run_stage("graph", [&] {
        for (const FeatureMatrix& v : sampled) {
            kernels.push_back(rbf_kernel(v, bandwidth));
            laplacians.push_back(trace_normalize(normalized_laplacian(kernels.back())));
        }
        return 0;
    });

    OptimizerResult opt = run_stage("optimize", [&] {
        return alternate(LaplacianBundle(laplacians), options.opt);
    });

    SpectralEmbedding emb = run_stage("embed", [&] {
        return embed(opt.combined, options.opt.clusters, options.row_normalize);
    });
    ClusterAssignment assignment = run_stage("cluster", [&] {
        return kmeans(emb, options.opt.clusters, options.restarts, options.kmeans_max_iters,
                      options.opt.seed);
    });

    std::vector<RepresentativeEntry> reps = run_stage("represent", [&] {
        std::vector<RepresentativeEntry> out;
        std::vector<std::vector<Index>> members(options.opt.clusters);
        for (Index i = 0; i < static_cast<Index>(assignment.labels.size()); ++i)
            members[assignment.labels[i]].push_back(i);
        for (const auto& [cluster, frame] : representatives(emb, assignment)) {
            RepresentativeEntry entry;
            entry.cluster = cluster;
            entry.frame = frame * subsample;
            entry.view = select_view(frame, kernels, members[cluster], options.view_selection);
            out.push_back(entry);
        }
        return out;
    });

    SummaryManifest m;
    m.n = sampled.front().rows();
    m.k = k;
    m.c = options.opt.clusters;
    m.gamma = options.opt.gamma;
    for (const KernelMatrix& g : kernels) m.sigma_per_view.push_back(g.sigma);
    m.weights.assign(opt.weights.mu.data(), opt.weights.mu.data() + opt.weights.mu.size());
    m.objective_trace = opt.objective_trace;
    m.labels = assignment.labels;
    m.representatives = std::move(reps);
    m.seed = options.opt.seed;
    m.tool_version = kToolVersion;
    m.config.bandwidth = bandwidth.is_median() ? "median" : "fixed";
    m.config.subsample = subsample;
    m.config.restarts = options.restarts;
    m.config.kmeans_max_iters = options.kmeans_max_iters;
    m.config.row_normalize = options.row_normalize;
    m.config.view_selection = view_selection_name(options.view_selection);
    m.config.max_iters = options.opt.max_iters;
    m.config.tol = options.opt.tol;
    m.config.converged = opt.converged;
    m.config.iterations = opt.iterations;
    return m;
}

SummaryManifest summarize(const DatasetSpec& spec, const SummarizeOptions& options) {
    std::vector<FeatureMatrix> views = run_stage("load", [&] { return load_views(spec); });
    return summarize_views(views, spec.bandwidth, spec.subsample, options);
}

std::pair<double, double> eval_event_pr(const SummaryManifest& manifest,
                                        const GroundTruthEvents& gt) {
    if (manifest.representatives.empty()) throw InvalidParameterError("manifest has no summary");
    if (gt.events.empty()) throw InvalidParameterError("ground truth has no events");

    // Representatives carry original frame indices; n counts kept frames.
    const Index frame_bound = manifest.n * manifest.config.subsample;
    std::vector<EventWindow> windows;
    for (const GroundTruthEvent& e : gt.events) {
        if (e.end >= frame_bound)
            throw InvalidParameterError("event end " + std::to_string(e.end) +
                                        " exceeds frame count " + std::to_string(frame_bound));
        windows.push_back({e.start, e.end});
    }
    std::vector<Index> frames;
    for (const RepresentativeEntry& r : manifest.representatives) frames.push_back(r.frame);

    const EventPr pr = event_precision_recall(frames, windows);
    return {pr.precision, pr.recall};
}

std::pair<double, double> eval_clustering(const std::vector<int>& predicted,
                                          const std::vector<int>& truth) {
    return {adjusted_rand_index(predicted, truth),
            normalized_mutual_information(predicted, truth)};
}

std::string manifest_to_json(const SummaryManifest& m) {
    return manifest_json(m).dump(2) + "\n";
}

SummaryManifest manifest_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("manifest: ") + e.what());
    }
    try {
        SummaryManifest m;
        m.schema = doc.at("schema").get<int>();
        if (m.schema != 1)
            throw ParseError("manifest: unsupported schema " + std::to_string(m.schema));
        m.n = doc.at("n").get<Index>();
        m.k = doc.at("k").get<int>();
        m.c = doc.at("c").get<int>();
        m.gamma = doc.at("gamma").get<double>();
        m.sigma_per_view = doc.at("sigma_per_view").get<std::vector<double>>();
        m.weights = doc.at("weights").get<std::vector<double>>();
        m.objective_trace = doc.at("objective_trace").get<std::vector<double>>();
        m.labels = doc.at("labels").get<std::vector<int>>();
        for (const json& r : doc.at("representatives")) {
            RepresentativeEntry entry;
            entry.cluster = r.at("cluster").get<int>();
            entry.frame = r.at("frame").get<Index>();
            entry.view = r.at("view").get<int>();
            m.representatives.push_back(entry);
        }
        m.seed = doc.at("seed").get<std::uint64_t>();
        if (doc.contains("tool_version")) m.tool_version = doc["tool_version"].get<std::string>();
        if (doc.contains("config")) {
            const json& c = doc["config"];
            m.config.bandwidth = c.value("bandwidth", std::string("median"));
            m.config.subsample = c.value("subsample", 1);
            m.config.restarts = c.value("restarts", 10);
            m.config.kmeans_max_iters = c.value("kmeans_max_iters", 100);
            m.config.row_normalize = c.value("row_normalize", true);
            m.config.view_selection = c.value("view_selection", std::string("mean_similarity"));
            m.config.max_iters = c.value("max_iters", 100);
            m.config.tol = c.value("tol", 1e-8);
            m.config.converged = c.value("converged", false);
            m.config.iterations = c.value("iterations", 0);
        }
        return m;
    } catch (const json::exception& e) {
        throw ParseError(std::string("manifest: ") + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << text;
    if (!out) throw IoError("failed writing " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace mvml
