#include <mvml/optimizer.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace mvml {

namespace {

constexpr int kMaxViewsForExactQp = 20;

void require_symmetric(const Matrix& m, const char* who) {
    if (m.rows() != m.cols())
        throw InvalidParameterError(std::string(who) + ": matrix must be square");
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if (asym > 1e-10 * scale)
        throw InvalidParameterError(std::string(who) + ": matrix is not symmetric (max |L - L'| = " +
                                    std::to_string(asym) + ")");
}

double sum_smallest(const Vector& ascending_eigenvalues, int c) {
    double s = 0.0;
    for (int i = 0; i < c; ++i) s += ascending_eigenvalues(i);
    return std::max(0.0, s);
}

}  // namespace

LaplacianBundle::LaplacianBundle(std::vector<Laplacian> laplacians)
    : laplacians_(std::move(laplacians)) {
    if (laplacians_.empty())
        throw InvalidParameterError("bundle needs at least one view");
    const Index n = laplacians_.front().size();
    for (std::size_t k = 0; k < laplacians_.size(); ++k) {
        const Laplacian& l = laplacians_[k];
        if (l.size() != n || l.data.cols() != l.data.rows())
            throw DimensionError("view " + std::to_string(k) + " has size " +
                                 std::to_string(l.size()) + ", expected " + std::to_string(n));
        if (!l.trace_normalized || std::abs(l.data.trace() - 1.0) > 1e-12)
            throw InvalidParameterError("view " + std::to_string(k) +
                                        " is not trace-normalized");
        require_symmetric(l.data, "LaplacianBundle");
    }
}

ViewWeights ViewWeights::simplex(Vector mu) {
    if (mu.size() < 1) throw InvalidParameterError("weights must have at least one entry");
    double sum = 0.0;
    for (Index k = 0; k < mu.size(); ++k) {
        if (mu(k) < 0.0)
            throw InvalidParameterError("weight " + std::to_string(k) + " is negative");
        sum += mu(k);
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw InvalidParameterError("weights sum to " + std::to_string(sum) + ", expected 1");
    return ViewWeights{std::move(mu)};
}

ViewWeights ViewWeights::uniform(int k) {
    if (k < 1) throw InvalidParameterError("need at least one view");
    return ViewWeights{Vector::Constant(k, 1.0 / k)};
}

EigenDecomposition eigen_decompose(const Matrix& symmetric) {
    require_symmetric(symmetric, "eigen_decompose");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric);
    if (solver.info() != Eigen::Success)
        throw InternalInvariantError("eigendecomposition failed to converge");

    EigenDecomposition d{solver.eigenvalues(), solver.eigenvectors()};
    // Fix each column's sign: the entry of largest magnitude (first such on
    // ties) is made positive.
    for (Index j = 0; j < d.eigenvectors.cols(); ++j) {
        Index arg = 0;
        double best = std::abs(d.eigenvectors(0, j));
        for (Index i = 1; i < d.eigenvectors.rows(); ++i) {
            const double a = std::abs(d.eigenvectors(i, j));
            if (a > best) {
                best = a;
                arg = i;
            }
        }
        if (d.eigenvectors(arg, j) < 0.0) d.eigenvectors.col(j) = -d.eigenvectors.col(j);
    }
    return d;
}

SpectralBasis spectral_basis(const Laplacian& l, int c) {
    const Index n = l.size();
    if (c < 1 || c >= n)
        throw InvalidParameterError("cluster count " + std::to_string(c) +
                                    " must satisfy 1 <= c < n = " + std::to_string(n));
    EigenDecomposition d = eigen_decompose(l.data);
    return SpectralBasis{d.eigenvectors.leftCols(c), std::move(d.eigenvalues)};
}

Laplacian combine(const LaplacianBundle& bundle, const ViewWeights& mu) {
    if (mu.views() != bundle.views())
        throw DimensionError("weights have " + std::to_string(mu.views()) +
                             " entries for " + std::to_string(bundle.views()) + " views");
    const Index n = bundle.frames();
    Matrix acc = Matrix::Zero(n, n);
    for (int k = 0; k < bundle.views(); ++k) acc += mu.mu(k) * bundle.view(k).data;
    return Laplacian{std::move(acc), true};
}

double structural_loss(const Laplacian& l, int c) {
    const Index n = l.size();
    if (c >= n)
        throw InvalidParameterError("cluster count " + std::to_string(c) +
                                    " must be below n = " + std::to_string(n));
    if (c < 1) throw InvalidParameterError("cluster count must be positive");
    if (!l.trace_normalized)
        throw InvalidParameterError("structural_loss expects a trace-normalized laplacian");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(l.data, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw InternalInvariantError("eigenvalue computation failed to converge");
    return sum_smallest(solver.eigenvalues(), c);
}

double disagreement_loss(const Laplacian& l, const LaplacianBundle& bundle) {
    if (l.size() != bundle.frames())
        throw DimensionError("laplacian size " + std::to_string(l.size()) +
                             " does not match bundle size " + std::to_string(bundle.frames()));
    if (!l.trace_normalized)
        throw InvalidParameterError("disagreement_loss expects a trace-normalized laplacian");
    double total = 0.0;
    for (int k = 0; k < bundle.views(); ++k)
        total += (l.data - bundle.view(k).data).squaredNorm();
    return total;
}

double objective(const LaplacianBundle& bundle, const ViewWeights& mu, int c, double gamma) {
    if (gamma < 0.0) throw InvalidParameterError("gamma must be non-negative");
    const Laplacian l = combine(bundle, mu);
    return structural_loss(l, c) + gamma * disagreement_loss(l, bundle);
}

ViewWeights solve_weight_qp(const LaplacianBundle& bundle, const Matrix& basis, double gamma) {
    const int k = bundle.views();
    if (k > kMaxViewsForExactQp)
        throw UnsupportedSizeError("exact support enumeration handles at most " +
                                   std::to_string(kMaxViewsForExactQp) + " views, got " +
                                   std::to_string(k));
    if (gamma < 0.0) throw InvalidParameterError("gamma must be non-negative");
    if (basis.rows() != bundle.frames())
        throw DimensionError("basis has " + std::to_string(basis.rows()) +
                             " rows for " + std::to_string(bundle.frames()) + " frames");

    // Reduce to min mu' A mu + b' mu over the simplex.
    Matrix gram(k, k);
    for (int a = 0; a < k; ++a) {
        for (int b = a; b < k; ++b) {
            const double v = bundle.view(a).data.cwiseProduct(bundle.view(b).data).sum();
            gram(a, b) = v;
            gram(b, a) = v;
        }
    }
    Vector lin(k);
    for (int a = 0; a < k; ++a) {
        const double trace_term = (bundle.view(a).data * basis).cwiseProduct(basis).sum();
        lin(a) = trace_term - 2.0 * gamma * gram.row(a).sum();
    }
    const Matrix quad = gamma * static_cast<double>(k) * gram;

    const auto eval = [&](const Vector& mu) {
        return mu.dot(quad * mu) + lin.dot(mu);
    };

    const Vector uniform = Vector::Constant(k, 1.0 / k);
    struct Candidate {
        Vector mu;
        double value;
    };
    std::vector<Candidate> candidates;
    candidates.push_back({uniform, eval(uniform)});

    // All non-empty supports; on each, solve the equality-constrained KKT
    // system [2A_SS 1; 1' 0] [mu_S; lambda] = [-b_S; 1].
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        std::vector<int> support;
        for (int a = 0; a < k; ++a)
            if (mask & (1u << a)) support.push_back(a);
        const int m = static_cast<int>(support.size());

        Matrix kkt = Matrix::Zero(m + 1, m + 1);
        Vector rhs(m + 1);
        for (int a = 0; a < m; ++a) {
            for (int b = 0; b < m; ++b) kkt(a, b) = 2.0 * quad(support[a], support[b]);
            kkt(a, m) = 1.0;
            kkt(m, a) = 1.0;
            rhs(a) = -lin(support[a]);
        }
        rhs(m) = 1.0;

        Eigen::FullPivLU<Matrix> lu(kkt);
        if (!lu.isInvertible()) continue;  // optimum lives on another face
        const Vector sol = lu.solve(rhs);

        bool feasible = true;
        Vector mu = Vector::Zero(k);
        for (int a = 0; a < m; ++a) {
            const double w = sol(a);
            if (w < -1e-10) {
                feasible = false;
                break;
            }
            mu(support[a]) = std::max(0.0, w);
        }
        if (!feasible) continue;
        const double sum = mu.sum();
        if (!(sum > 0.0)) continue;
        mu /= sum;  // restores an exact unit sum after clamping round-off
        const double value = eval(mu);
        candidates.push_back({std::move(mu), value});
    }

    // Lowest objective wins; ties within 1e-12 go to the candidate closest to
    // uniform, then to the earliest candidate.
    double best_value = std::numeric_limits<double>::infinity();
    for (const Candidate& cand : candidates) best_value = std::min(best_value, cand.value);
    const Candidate* best = nullptr;
    double best_dist = std::numeric_limits<double>::infinity();
    for (const Candidate& cand : candidates) {
        if (cand.value > best_value + 1e-12) continue;
        const double dist = (cand.mu - uniform).squaredNorm();
        if (dist < best_dist) {
            best_dist = dist;
            best = &cand;
        }
    }
    return ViewWeights::simplex(best->mu);
}

OptimizerResult alternate(const LaplacianBundle& bundle, const OptimizerConfig& config) {
    const Index n = bundle.frames();
    const int c = config.clusters;
    if (c < 2 || c >= n)
        throw InvalidParameterError("cluster count " + std::to_string(c) +
                                    " must satisfy 2 <= c < n = " + std::to_string(n));
    if (config.max_iters < 1) throw InvalidParameterError("max_iters must be at least 1");
    if (!(config.tol > 0.0)) throw InvalidParameterError("tol must be positive");
    if (config.gamma < 0.0) throw InvalidParameterError("gamma must be non-negative");

    OptimizerResult result;
    ViewWeights mu = ViewWeights::uniform(bundle.views());
    Laplacian l = combine(bundle, mu);
    SpectralBasis basis = spectral_basis(l, c);

    const auto record = [&](const Laplacian& lap, const SpectralBasis& sb) {
        const double structural = sum_smallest(sb.eigenvalues, c);
        const double kyfan = (lap.data * sb.vectors).cwiseProduct(sb.vectors).sum();
        result.diagnostics.max_kyfan_residual = std::max(
            result.diagnostics.max_kyfan_residual, std::abs(kyfan - sb.eigenvalues.head(c).sum()));
        return structural + config.gamma * disagreement_loss(lap, bundle);
    };

    result.objective_trace.push_back(record(l, basis));

    for (int iter = 1; iter <= config.max_iters; ++iter) {
        mu = solve_weight_qp(bundle, basis.vectors, config.gamma);
        l = combine(bundle, mu);
        basis = spectral_basis(l, c);

        const double prev = result.objective_trace.back();
        const double next = record(l, basis);
        result.objective_trace.push_back(next);
        result.iterations = iter;
        if (next > prev + 1e-9)
            throw InternalInvariantError("objective rose from " + std::to_string(prev) +
                                         " to " + std::to_string(next) +
                                         " in iteration " + std::to_string(iter));
        if (std::abs(next - prev) < config.tol) {
            result.converged = true;
            break;
        }
    }

    result.diagnostics.boundary_gap = basis.eigenvalues(c) - basis.eigenvalues(c - 1);
    result.diagnostics.degenerate_gap = result.diagnostics.boundary_gap < 1e-10;
    result.weights = std::move(mu);
    result.basis = std::move(basis.vectors);
    result.combined = std::move(l);
    return result;
}

}  // namespace mvml
