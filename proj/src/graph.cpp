#include <mvml/graph.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace mvml {

namespace {

void validate_features(const FeatureMatrix& x) {
    if (x.rows() < 2 || x.cols() < 1)
        throw InvalidParameterError("feature matrix must be at least 2x1, got " +
                                    std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
    if (!x.data.allFinite())
        throw InvalidInputError("feature matrix contains non-finite entries");
}

double median_of(std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size();
    if (m % 2 == 1) return v[m / 2];
    return 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

}  // namespace

Matrix pairwise_sq_dists(const FeatureMatrix& x) {
    validate_features(x);
    const Index n = x.rows();
    Matrix d2 = Matrix::Zero(n, n);
    // Direct per-pair evaluation; more accurate than the Gram-matrix identity
    // and the mirror keeps the result exactly symmetric.
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const double d = (x.data.row(i) - x.data.row(j)).squaredNorm();
            d2(i, j) = d;
            d2(j, i) = d;
        }
    }
    return d2;
}

KernelMatrix rbf_kernel(const FeatureMatrix& x, const BandwidthPolicy& policy) {
    const Matrix d2 = pairwise_sq_dists(x);
    const Index n = d2.rows();

    double sigma;
    if (policy.is_median()) {
        std::vector<double> dists;
        dists.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
        for (Index i = 0; i < n; ++i)
            for (Index j = i + 1; j < n; ++j) dists.push_back(std::sqrt(d2(i, j)));
        sigma = median_of(dists);
        if (!(sigma > 0.0))
            throw DegenerateDataError("median pairwise distance is zero; "
                                      "data points are (mostly) identical");
    } else {
        sigma = policy.sigma();
        if (!(sigma > 0.0))
            throw InvalidParameterError("fixed bandwidth must be positive");
    }

    const double inv = 1.0 / (2.0 * sigma * sigma);
    KernelMatrix g;
    g.sigma = sigma;
    g.data = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        g.data(i, i) = 1.0;
        for (Index j = i + 1; j < n; ++j) {
            const double v = std::exp(-d2(i, j) * inv);
            g.data(i, j) = v;
            g.data(j, i) = v;
        }
    }
    return g;
}

Laplacian normalized_laplacian(const KernelMatrix& g) {
    const Index n = g.size();
    if (n < 2 || g.data.cols() != n)
        throw InvalidParameterError("kernel must be square with n >= 2");
    if (!g.data.allFinite())
        throw InvalidInputError("kernel contains non-finite entries");

    const Vector deg = g.data.rowwise().sum();
    for (Index i = 0; i < n; ++i) {
        if (!(deg(i) > 0.0))
            throw InvalidKernelError("vertex " + std::to_string(i) +
                                     " has non-positive degree " + std::to_string(deg(i)));
    }

    const Vector dinv_sqrt = deg.array().rsqrt();
    Matrix l = Matrix::Identity(n, n) -
               dinv_sqrt.asDiagonal() * g.data * dinv_sqrt.asDiagonal();
    // The triple product is not exactly symmetric in floating point and the
    // eigensolver assumes symmetry.
    l = 0.5 * (l + l.transpose()).eval();
    return Laplacian{std::move(l), false};
}

Laplacian trace_normalize(const Laplacian& l) {
    const double tr = l.data.trace();
    if (tr <= 1e-14)
        throw DegenerateLaplacianError("laplacian trace " + std::to_string(tr) +
                                       " too small to normalize");
    return Laplacian{l.data / tr, true};
}

}  // namespace mvml
