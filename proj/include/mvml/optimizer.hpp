#pragma once

#include <cstdint>
#include <vector>

#include <mvml/errors.hpp>
#include <mvml/graph.hpp>
#include <mvml/types.hpp>

namespace mvml {

/// The K per-view trace-normalized Laplacians of one synchronized dataset.
class LaplacianBundle {
public:
    /// Validates: K >= 1, equal sizes, symmetry, unit trace within 1e-12.
    explicit LaplacianBundle(std::vector<Laplacian> laplacians);

    int views() const { return static_cast<int>(laplacians_.size()); }
    Index frames() const { return laplacians_.front().size(); }
    const Laplacian& view(int k) const { return laplacians_.at(static_cast<std::size_t>(k)); }
    const std::vector<Laplacian>& all() const { return laplacians_; }

private:
    std::vector<Laplacian> laplacians_;
};

/// Convex-combination weights over the K views.
struct ViewWeights {
    Vector mu;

    /// Validates non-negativity and unit sum within 1e-12.
    static ViewWeights simplex(Vector mu);
    static ViewWeights uniform(int k);

    int views() const { return static_cast<int>(mu.size()); }
};

struct OptimizerConfig {
    int clusters = 2;         ///< target cluster count c, 2 <= c < n
    double gamma = 1.0;       ///< disagreement weight, >= 0
    int max_iters = 100;
    double tol = 1e-8;        ///< stop when the objective drops by less than this
    std::uint64_t seed = 0;   ///< threaded through to downstream clustering
};

struct OptimizerDiagnostics {
    /// max over iterations of |tr(P' L P) - sum of c smallest eigenvalues|
    double max_kyfan_residual = 0.0;
    /// eigenvalue gap lambda_c - lambda_{c-1} of the final combined Laplacian
    double boundary_gap = 0.0;
    /// true when the gap is numerically zero, i.e. the c-dimensional basis is
    /// not unique; the deterministic decomposition order fixes the choice
    bool degenerate_gap = false;
};

struct OptimizerResult {
    ViewWeights weights;
    Matrix basis;                        ///< n x c, orthonormal columns
    Laplacian combined;                  ///< combination at the final weights
    std::vector<double> objective_trace; ///< initial value plus one per iteration
    bool converged = false;
    int iterations = 0;
    OptimizerDiagnostics diagnostics;
};

/// Full eigendecomposition of a symmetric matrix, eigenvalues ascending.
/// Column signs are fixed so each eigenvector's largest-magnitude entry is
/// positive (first such entry on ties), making the decomposition
/// deterministic and reproducible.
struct EigenDecomposition {
    Vector eigenvalues;
    Matrix eigenvectors;
};
EigenDecomposition eigen_decompose(const Matrix& symmetric);

/// Orthonormal basis for the c smallest eigenvalues plus the full spectrum.
struct SpectralBasis {
    Matrix vectors;      ///< n x c
    Vector eigenvalues;  ///< all n, ascending
};
SpectralBasis spectral_basis(const Laplacian& l, int c);

/// Convex combination sum_k mu_k L_k. Preserves symmetry, PSD and unit trace.
Laplacian combine(const LaplacianBundle& bundle, const ViewWeights& mu);

/// Sum of the c smallest eigenvalues of a trace-normalized Laplacian; zero
/// exactly when the graph splits into at least c components, and a proxy for
/// how well the metric supports a c-way partition. Value in [0, 1].
double structural_loss(const Laplacian& l, int c);

/// sum_k ||l - L_k||_F^2: how far the combined metric drifts from the views.
double disagreement_loss(const Laplacian& l, const LaplacianBundle& bundle);

/// structural_loss(combine(mu)) + gamma * disagreement_loss(combine(mu)).
double objective(const LaplacianBundle& bundle, const ViewWeights& mu, int c, double gamma);

/// Exact minimizer over the simplex of
///   sum_k mu_k tr(P' L_k P) + gamma * sum_i ||sum_k mu_k L_k - L_i||_F^2.
///
/// The problem reduces to min mu' A mu + b' mu with A = gamma*K*Gram,
/// Gram_kl = <L_k, L_l>_F and b_k = tr(P' L_k P) - 2*gamma*sum_i Gram_ki.
/// Every non-empty support set is enumerated (hence K <= 20), the
/// equality-constrained KKT system is solved on each, feasible candidates are
/// kept, and the best one wins; ties within 1e-12 go to the candidate closest
/// to uniform weights. The uniform point itself is always evaluated as a
/// candidate so that flat objectives resolve to it.
ViewWeights solve_weight_qp(const LaplacianBundle& bundle, const Matrix& basis, double gamma);

/// Alternating descent: from uniform weights, repeat
///   P  <- spectral basis of combine(mu)
///   mu <- solve_weight_qp(bundle, P, gamma)
/// until the objective decreases by less than tol or max_iters is reached.
/// The recorded objective trace is non-increasing; a rise beyond 1e-9 throws
/// InternalInvariantError.
OptimizerResult alternate(const LaplacianBundle& bundle, const OptimizerConfig& config);

}  // namespace mvml
