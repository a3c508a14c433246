#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <mvml/graph.hpp>
#include <mvml/optimizer.hpp>
#include <mvml/types.hpp>

namespace mvml {

/// Frames mapped into the learned metric space: one row per frame, one
/// column per retained eigenvector.
struct SpectralEmbedding {
    Matrix coords;
    bool row_normalized = false;
    std::vector<Index> zero_rows;  ///< rows that could not be normalized

    Index frames() const { return coords.rows(); }
    Index dims() const { return coords.cols(); }
};

struct ClusterAssignment {
    std::vector<int> labels;  ///< length n, values in [0, c)
    Matrix centroids;         ///< c x dims
    double inertia = 0.0;     ///< within-cluster sum of squared distances

    int clusters() const { return static_cast<int>(centroids.rows()); }
};

/// How the reported view is chosen for each representative frame.
enum class ViewSelection {
    MeanSimilarity,  ///< view whose kernel sees the frame as most central in its cluster
    FirstView,       ///< always view 0
};

/// Rows of the spectral basis of l, optionally scaled to unit norm (the
/// standard stabilization before k-means on eigenvector rows). Zero rows are
/// left as-is and reported in the result.
SpectralEmbedding embed(const Laplacian& l, int c, bool row_normalize);

/// Lloyd's algorithm with k-means++ seeding, best of `restarts` runs.
/// Deterministic for a fixed seed; each restart draws from its own stream.
/// A cluster that empties is repaired by moving in the point farthest from
/// its centroid.
ClusterAssignment kmeans(const SpectralEmbedding& e, int c, int restarts, int max_iters,
                         std::uint64_t seed);

/// For each cluster, the member frame closest to its centroid (ties to the
/// lowest frame index). Sorted by frame index.
std::vector<std::pair<int, Index>> representatives(const SpectralEmbedding& e,
                                                   const ClusterAssignment& a);

/// View with the highest mean similarity between `frame` and its cluster
/// members; ties go to the lowest view id.
int select_view(Index frame, const std::vector<KernelMatrix>& kernels,
                const std::vector<Index>& members, ViewSelection strategy);

}  // namespace mvml
