#include <mvml/synthbench.hpp>

#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

#include <mvml/clustering.hpp>
#include <mvml/metrics.hpp>
#include <mvml/rng.hpp>

namespace mvml {

namespace {

using nlohmann::json;

constexpr int kCenterAttempts = 200;

void validate(const SynthConfig& cfg) {
    if (cfg.clusters < 2) throw InvalidParameterError("clusters must be at least 2");
    if (cfg.points_per_cluster < 1)
        throw InvalidParameterError("points_per_cluster must be at least 1");
    if (cfg.latent_dim < 1) throw InvalidParameterError("latent_dim must be at least 1");
    if (cfg.views < 1) throw InvalidParameterError("views must be at least 1");
    if (!(cfg.noise_sigma >= 0.0)) throw InvalidParameterError("noise_sigma must be >= 0");
    if (!(cfg.cluster_separation > 0.0))
        throw InvalidParameterError("cluster_separation must be > 0");
    std::set<int> seen;
    for (int v : cfg.corrupted_views) {
        if (v < 0 || v >= cfg.views)
            throw InvalidParameterError("corrupted view " + std::to_string(v) +
                                        " outside [0, " + std::to_string(cfg.views) + ")");
        if (!seen.insert(v).second)
            throw InvalidParameterError("corrupted view " + std::to_string(v) + " listed twice");
    }
}

Vector gaussian_vector(rng::Engine& engine, Index d) {
    Vector v(d);
    for (Index i = 0; i < d; ++i) v(i) = engine.gaussian();
    return v;
}

Matrix gaussian_matrix(rng::Engine& engine, Index rows, Index cols) {
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = engine.gaussian();
    return m;
}

// Haar-ish random orthogonal matrix: QR of a Gaussian matrix with the sign
// of each diagonal R entry folded into the corresponding Q column.
Matrix random_orthogonal(rng::Engine& engine, Index d) {
    const Matrix a = gaussian_matrix(engine, d, d);
    Eigen::HouseholderQR<Matrix> qr(a);
    Matrix q = qr.householderQ() * Matrix::Identity(d, d);
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index j = 0; j < d; ++j)
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    return q;
}

std::vector<int> spectral_cluster(const Laplacian& lap, int c, int restarts,
                                  std::uint64_t seed) {
    SpectralEmbedding e = embed(lap, c, true);
    return kmeans(e, c, restarts, 100, seed).labels;
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double std_of(const std::vector<double>& v, double mean) {
    if (v.empty()) return 0.0;
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return std::sqrt(s / static_cast<double>(v.size()));
}

}  // namespace

LatentData gen_latent(const SynthConfig& cfg) {
    validate(cfg);
    rng::Engine engine(rng::derive_seed(cfg.seed, 0));
    const Index d = cfg.latent_dim;
    const int c = cfg.clusters;

    // Center proposals spread one separation unit per coordinate; rejection
    // enforces the pairwise floor.
    const double proposal = cfg.cluster_separation;
    Matrix centers(c, d);
    for (int i = 0; i < c; ++i) {
        bool placed = false;
        for (int attempt = 0; attempt < kCenterAttempts && !placed; ++attempt) {
            const Vector cand = proposal * gaussian_vector(engine, d);
            placed = true;
            for (int j = 0; j < i; ++j) {
                if ((cand.transpose() - centers.row(j)).norm() < cfg.cluster_separation) {
                    placed = false;
                    break;
                }
            }
            if (placed) centers.row(i) = cand;
        }
        if (!placed)
            throw SeparationInfeasibleError(
                "could not place center " + std::to_string(i) + " at separation " +
                std::to_string(cfg.cluster_separation) + " after " +
                std::to_string(kCenterAttempts) + " attempts");
    }

    const Index n = static_cast<Index>(c) * cfg.points_per_cluster;
    LatentData latent;
    latent.centers = centers;
    latent.points.resize(n, d);
    latent.labels.reserve(n);
    Index row = 0;
    for (int i = 0; i < c; ++i) {
        for (int p = 0; p < cfg.points_per_cluster; ++p, ++row) {
            latent.points.row(row) =
                centers.row(i) + cfg.noise_sigma * gaussian_vector(engine, d).transpose();
            latent.labels.push_back(i);
        }
    }
    return latent;
}

std::vector<FeatureMatrix> gen_views(const LatentData& latent, const SynthConfig& cfg) {
    validate(cfg);
    const Index n = latent.points.rows();
    const Index d = latent.points.cols();
    if (n < 2 || d < 1) throw InvalidParameterError("latent data is too small");
    const std::set<int> corrupted(cfg.corrupted_views.begin(), cfg.corrupted_views.end());

    std::vector<FeatureMatrix> views;
    views.reserve(cfg.views);
    for (int k = 0; k < cfg.views; ++k) {
        rng::Engine engine(rng::derive_seed(cfg.seed, 1 + static_cast<std::uint64_t>(k)));
        FeatureMatrix v;
        if (corrupted.count(k)) {
            v.data = gaussian_matrix(engine, n, d);
        } else {
            const Matrix q = random_orthogonal(engine, d);
            const Vector t = gaussian_vector(engine, d);
            v.data = latent.points * q;
            v.data.rowwise() += t.transpose();
            if (cfg.noise_sigma > 0.0)
                v.data += cfg.noise_sigma * gaussian_matrix(engine, n, d);
        }
        views.push_back(std::move(v));
    }
    return views;
}

BenchReport run_benchmark(const SynthConfig& cfg, const std::vector<std::uint64_t>& seeds,
                          const OptimizerConfig& opt, int restarts) {
    validate(cfg);
    if (seeds.empty()) throw InvalidParameterError("at least one seed is required");
    if (restarts < 1) throw InvalidParameterError("restarts must be at least 1");
    if (opt.clusters != cfg.clusters)
        throw InvalidParameterError("optimizer clusters must match the planted cluster count");

    BenchReport report;
    report.config = cfg;
    report.opt = opt;
    report.restarts = restarts;
    report.methods.push_back("ours");
    report.methods.push_back("uniform");
    for (int k = 0; k < cfg.views; ++k) report.methods.push_back("view" + std::to_string(k));
    report.methods.push_back("concat");

    const int c = cfg.clusters;
    for (std::uint64_t seed : seeds) {
        BenchInstance inst;
        inst.seed = seed;
        try {
            SynthConfig icfg = cfg;
            icfg.seed = seed;
            OptimizerConfig iopt = opt;
            iopt.seed = seed;

            const LatentData latent = gen_latent(icfg);
            const std::vector<FeatureMatrix> views = gen_views(latent, icfg);

            std::vector<KernelMatrix> kernels;
            std::vector<Laplacian> laplacians;
            for (const FeatureMatrix& v : views) {
                kernels.push_back(rbf_kernel(v, BandwidthPolicy::median()));
                laplacians.push_back(trace_normalize(normalized_laplacian(kernels.back())));
            }
            const LaplacianBundle bundle(laplacians);

            using clock = std::chrono::steady_clock;
            const auto timed = [&](const std::string& name, auto&& body) {
                const auto start = clock::now();
                const std::vector<int> labels = body();
                inst.runtime_sec[name] =
                    std::chrono::duration<double>(clock::now() - start).count();
                inst.ari[name] = adjusted_rand_index(labels, latent.labels);
                inst.nmi[name] = normalized_mutual_information(labels, latent.labels);
            };

            timed("ours", [&] {
                OptimizerResult res = alternate(bundle, iopt);
                inst.mu.assign(res.weights.mu.data(),
                               res.weights.mu.data() + res.weights.mu.size());
                return spectral_cluster(res.combined, c, restarts, seed);
            });
            timed("uniform", [&] {
                const Laplacian lap = combine(bundle, ViewWeights::uniform(cfg.views));
                return spectral_cluster(lap, c, restarts, seed);
            });
            for (int k = 0; k < cfg.views; ++k) {
                timed("view" + std::to_string(k),
                      [&] { return spectral_cluster(bundle.view(k), c, restarts, seed); });
            }
            timed("concat", [&] {
                Index total = 0;
                for (const FeatureMatrix& v : views) total += v.cols();
                FeatureMatrix cat;
                cat.data.resize(views.front().rows(), total);
                Index col = 0;
                for (const FeatureMatrix& v : views) {
                    cat.data.middleCols(col, v.cols()) = v.data;
                    col += v.cols();
                }
                const Laplacian lap = trace_normalize(
                    normalized_laplacian(rbf_kernel(cat, BandwidthPolicy::median())));
                return spectral_cluster(lap, c, restarts, seed);
            });

            inst.ok = true;
        } catch (const Error& e) {
            inst.ok = false;
            inst.error = e.what();
            ++report.failed;
        }
        report.instances.push_back(std::move(inst));
    }

    for (const std::string& method : report.methods) {
        std::vector<double> aris;
        std::vector<double> nmis;
        for (const BenchInstance& inst : report.instances) {
            if (!inst.ok) continue;
            aris.push_back(inst.ari.at(method));
            nmis.push_back(inst.nmi.at(method));
        }
        MethodSummary s;
        s.mean_ari = mean_of(aris);
        s.std_ari = std_of(aris, s.mean_ari);
        s.mean_nmi = mean_of(nmis);
        s.std_nmi = std_of(nmis, s.mean_nmi);
        report.summary[method] = s;
    }
    return report;
}

std::string bench_report_to_json(const BenchReport& report) {
    json config{{"clusters", report.config.clusters},
                {"points_per_cluster", report.config.points_per_cluster},
                {"latent_dim", report.config.latent_dim},
                {"views", report.config.views},
                {"noise_sigma", report.config.noise_sigma},
                {"corrupted_views", report.config.corrupted_views},
                {"cluster_separation", report.config.cluster_separation},
                {"seed", report.config.seed}};
    json instances = json::array();
    for (const BenchInstance& inst : report.instances) {
        json row{{"seed", inst.seed}, {"ok", inst.ok}};
        if (inst.ok) {
            // Wall-clock runtimes stay out of the report so repeated runs
            // with the same flags produce byte-identical files; they are
            // available in the CSV table instead.
            row["mu"] = inst.mu;
            row["ari"] = inst.ari;
            row["nmi"] = inst.nmi;
        } else {
            row["error"] = inst.error;
        }
        instances.push_back(std::move(row));
    }
    json summary;
    for (const auto& [method, s] : report.summary)
        summary[method] = {{"mean_ari", s.mean_ari},
                           {"std_ari", s.std_ari},
                           {"mean_nmi", s.mean_nmi},
                           {"std_nmi", s.std_nmi}};
    json optimizer{{"gamma", report.opt.gamma},
                   {"max_iters", report.opt.max_iters},
                   {"tol", report.opt.tol},
                   {"restarts", report.restarts}};
    json doc{{"schema", 1},
             {"config", config},
             {"optimizer", optimizer},
             {"methods", report.methods},
             {"instances", instances},
             {"summary", summary},
             {"failed", report.failed}};
    return doc.dump(2) + "\n";
}

std::string bench_report_to_csv(const BenchReport& report) {
    std::ostringstream out;
    out << "seed,method,ari,nmi,runtime_sec\n";
    out.precision(17);
    for (const BenchInstance& inst : report.instances) {
        if (!inst.ok) continue;
        for (const std::string& method : report.methods)
            out << inst.seed << ',' << method << ',' << inst.ari.at(method) << ','
                << inst.nmi.at(method) << ',' << inst.runtime_sec.at(method) << '\n';
    }
    return out.str();
}

}  // namespace mvml
