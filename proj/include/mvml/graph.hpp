#pragma once

#include <mvml/errors.hpp>
#include <mvml/types.hpp>

namespace mvml {

/// Per-view feature matrix: one row per frame, rows synchronized across
/// views of the same dataset.
struct FeatureMatrix {
    Matrix data;

    Index rows() const { return data.rows(); }
    Index cols() const { return data.cols(); }
};

/// Dense RBF similarity matrix. Entries lie in (0, 1] with unit diagonal,
/// so every vertex has degree >= 1.
struct KernelMatrix {
    Matrix data;
    double sigma = 0.0;

    Index size() const { return data.rows(); }
};

/// Symmetric normalized Laplacian I - D^{-1/2} G D^{-1/2}, optionally
/// rescaled to unit trace.
struct Laplacian {
    Matrix data;
    bool trace_normalized = false;

    Index size() const { return data.rows(); }
};

/// How the RBF bandwidth is chosen: the median of all off-diagonal pairwise
/// distances (default; invariant to isometries and positive scaling of the
/// input), or a fixed value for reproducing a specific run.
class BandwidthPolicy {
public:
    static BandwidthPolicy median() { return BandwidthPolicy(true, 0.0); }
    static BandwidthPolicy fixed(double sigma) { return BandwidthPolicy(false, sigma); }

    bool is_median() const { return median_; }
    double sigma() const { return sigma_; }

private:
    BandwidthPolicy(bool median, double sigma) : median_(median), sigma_(sigma) {}
    bool median_;
    double sigma_;
};

/// Squared Euclidean distances between all row pairs. Exactly symmetric with
/// a zero diagonal. Throws InvalidInputError on non-finite entries.
Matrix pairwise_sq_dists(const FeatureMatrix& x);

/// G(i,j) = exp(-d^2(i,j) / (2 sigma^2)). Under the median policy sigma is
/// the median off-diagonal pairwise distance, computed per call; all points
/// identical (median 0) raises DegenerateDataError.
KernelMatrix rbf_kernel(const FeatureMatrix& x, const BandwidthPolicy& policy);

/// L = I - D^{-1/2} G D^{-1/2}, explicitly re-symmetrized. Requires strictly
/// positive degrees (always true for RBF kernels; guards hand-built ones).
Laplacian normalized_laplacian(const KernelMatrix& g);

/// Rescale to unit trace so Laplacians of different graphs are comparable.
/// Eigenvectors are unchanged. Trace below 1e-14 raises
/// DegenerateLaplacianError.
Laplacian trace_normalize(const Laplacian& l);

}  // namespace mvml
