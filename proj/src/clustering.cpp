#include <mvml/clustering.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include <mvml/rng.hpp>

namespace mvml {

namespace {

struct LloydRun {
    std::vector<int> labels;
    Matrix centroids;
    double inertia = 0.0;
};

// k-means++: first center uniform, later ones weighted by squared distance
// to the nearest chosen center. If every remaining distance is zero
// (duplicate points), the lowest unchosen index is taken.
std::vector<Index> seed_centers(const Matrix& x, int c, rng::Engine& engine) {
    const Index n = x.rows();
    std::vector<Index> centers;
    centers.reserve(c);
    std::vector<double> min_d2(n, std::numeric_limits<double>::infinity());
    std::vector<char> chosen(n, 0);

    Index first = static_cast<Index>(engine.uniform_int(static_cast<std::uint64_t>(n)));
    centers.push_back(first);
    chosen[first] = 1;

    for (int round = 1; round < c; ++round) {
        const Index last = centers.back();
        double total = 0.0;
        for (Index i = 0; i < n; ++i) {
            const double d2 = (x.row(i) - x.row(last)).squaredNorm();
            min_d2[i] = std::min(min_d2[i], d2);
            total += min_d2[i];
        }
        Index next = -1;
        if (total > 0.0) {
            next = static_cast<Index>(engine.discrete(min_d2));
        } else {
            for (Index i = 0; i < n; ++i) {
                if (!chosen[i]) {
                    next = i;
                    break;
                }
            }
            if (next < 0) next = 0;
        }
        centers.push_back(next);
        chosen[next] = 1;
    }
    return centers;
}

LloydRun lloyd(const Matrix& x, int c, int max_iters, rng::Engine& engine) {
    const Index n = x.rows();
    LloydRun run;
    run.labels.assign(n, 0);
    run.centroids = Matrix::Zero(c, x.cols());

    const std::vector<Index> seeds = seed_centers(x, c, engine);
    for (int j = 0; j < c; ++j) run.centroids.row(j) = x.row(seeds[j]);

    std::vector<int> counts(c, 0);
    for (int iter = 0; iter < max_iters; ++iter) {
        bool changed = false;

        // Assign to the nearest centroid, lowest id on ties.
        std::fill(counts.begin(), counts.end(), 0);
        for (Index i = 0; i < n; ++i) {
            int arg = 0;
            double best = (x.row(i) - run.centroids.row(0)).squaredNorm();
            for (int j = 1; j < c; ++j) {
                const double d2 = (x.row(i) - run.centroids.row(j)).squaredNorm();
                if (d2 < best) {
                    best = d2;
                    arg = j;
                }
            }
            if (run.labels[i] != arg) {
                run.labels[i] = arg;
                changed = true;
            }
            ++counts[arg];
        }

        // Repair empty clusters with the globally farthest point (skipping
        // points that are the sole member of their cluster).
        for (int j = 0; j < c; ++j) {
            if (counts[j] > 0) continue;
            Index farthest = -1;
            double far_d2 = -1.0;
            for (Index i = 0; i < n; ++i) {
                if (counts[run.labels[i]] <= 1) continue;
                const double d2 = (x.row(i) - run.centroids.row(run.labels[i])).squaredNorm();
                if (d2 > far_d2) {
                    far_d2 = d2;
                    farthest = i;
                }
            }
            if (farthest < 0)
                throw InternalInvariantError("cannot repair empty cluster " + std::to_string(j));
            --counts[run.labels[farthest]];
            run.labels[farthest] = j;
            ++counts[j];
            changed = true;
        }

        // Update centroids.
        run.centroids.setZero();
        for (Index i = 0; i < n; ++i) run.centroids.row(run.labels[i]) += x.row(i);
        for (int j = 0; j < c; ++j) run.centroids.row(j) /= static_cast<double>(counts[j]);

        if (!changed) break;
    }

    run.inertia = 0.0;
    for (Index i = 0; i < n; ++i)
        run.inertia += (x.row(i) - run.centroids.row(run.labels[i])).squaredNorm();
    return run;
}

}  // namespace

SpectralEmbedding embed(const Laplacian& l, int c, bool row_normalize) {
    const Index n = l.size();
    if (c < 2 || c >= n)
        throw InvalidParameterError("embedding dimension " + std::to_string(c) +
                                    " must satisfy 2 <= c < n = " + std::to_string(n));
    SpectralBasis basis = spectral_basis(l, c);

    SpectralEmbedding e;
    e.coords = std::move(basis.vectors);
    if (row_normalize) {
        for (Index i = 0; i < n; ++i) {
            const double norm = e.coords.row(i).norm();
            if (norm > 0.0)
                e.coords.row(i) /= norm;
            else
                e.zero_rows.push_back(i);
        }
        e.row_normalized = true;
    }
    return e;
}

ClusterAssignment kmeans(const SpectralEmbedding& e, int c, int restarts, int max_iters,
                         std::uint64_t seed) {
    const Index n = e.frames();
    if (c < 1 || c > n)
        throw InvalidParameterError("cluster count " + std::to_string(c) +
                                    " must satisfy 1 <= c <= n = " + std::to_string(n));
    if (restarts < 1) throw InvalidParameterError("restarts must be at least 1");
    if (max_iters < 1) throw InvalidParameterError("max_iters must be at least 1");

    LloydRun best;
    best.inertia = std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
        rng::Engine engine(rng::derive_seed(seed, static_cast<std::uint64_t>(r)));
        LloydRun run = lloyd(e.coords, c, max_iters, engine);
        if (run.inertia < best.inertia) best = std::move(run);
    }
    return ClusterAssignment{std::move(best.labels), std::move(best.centroids), best.inertia};
}

std::vector<std::pair<int, Index>> representatives(const SpectralEmbedding& e,
                                                   const ClusterAssignment& a) {
    const Index n = e.frames();
    if (static_cast<Index>(a.labels.size()) != n)
        throw DimensionError("labels length does not match embedding");
    if (a.centroids.cols() != e.dims())
        throw DimensionError("centroid dimension does not match embedding");
    const int c = a.clusters();

    std::vector<Index> arg(c, -1);
    std::vector<double> best(c, std::numeric_limits<double>::infinity());
    for (Index i = 0; i < n; ++i) {
        const int j = a.labels[i];
        if (j < 0 || j >= c)
            throw InvalidParameterError("label " + std::to_string(j) + " out of range");
        const double d2 = (e.coords.row(i) - a.centroids.row(j)).squaredNorm();
        if (d2 < best[j]) {  // strict: ties keep the lowest frame index
            best[j] = d2;
            arg[j] = i;
        }
    }

    std::vector<std::pair<int, Index>> reps;
    reps.reserve(c);
    for (int j = 0; j < c; ++j) {
        if (arg[j] < 0)
            throw InvalidParameterError("cluster " + std::to_string(j) + " is empty");
        reps.emplace_back(j, arg[j]);
    }
    std::sort(reps.begin(), reps.end(),
              [](const auto& a_, const auto& b_) { return a_.second < b_.second; });
    return reps;
}

int select_view(Index frame, const std::vector<KernelMatrix>& kernels,
                const std::vector<Index>& members, ViewSelection strategy) {
    if (kernels.empty()) throw InvalidParameterError("no views to select from");
    if (strategy == ViewSelection::FirstView) return 0;
    if (members.empty()) throw InvalidParameterError("member list is empty");
    if (std::find(members.begin(), members.end(), frame) == members.end())
        throw InvalidParameterError("frame " + std::to_string(frame) +
                                    " is not among its cluster members");

    int best_view = 0;
    double best_mean = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < kernels.size(); ++k) {
        const Matrix& g = kernels[k].data;
        if (frame >= g.rows())
            throw DimensionError("frame index out of range for view " + std::to_string(k));
        double sum = 0.0;
        for (Index j : members) sum += g(frame, j);
        const double mean = sum / static_cast<double>(members.size());
        if (mean > best_mean) {  // strict: ties keep the lowest view id
            best_mean = mean;
            best_view = static_cast<int>(k);
        }
    }
    return best_view;
}

}  // namespace mvml
