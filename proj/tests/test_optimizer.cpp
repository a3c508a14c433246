#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <mvml/graph.hpp>
#include <mvml/optimizer.hpp>
#include <mvml/rng.hpp>

using namespace mvml;

namespace {

Laplacian lap_from_matrix(Matrix m) { return Laplacian{std::move(m), true}; }

Laplacian lap_from_features(const Matrix& rows) {
    FeatureMatrix x;
    x.data = rows;
    return trace_normalize(normalized_laplacian(rbf_kernel(x, BandwidthPolicy::median())));
}

Matrix random_rows(rng::Engine& engine, Index n, Index d) {
    Matrix m(n, d);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < d; ++j) m(i, j) = engine.gaussian();
    return m;
}

/// Two clearly separated gaussian blobs; the per-view offset decorrelates the
/// views without destroying the shared cluster structure.
Matrix blob_rows(rng::Engine& engine, Index per_blob, Index d, double spread) {
    Matrix m(2 * per_blob, d);
    for (Index i = 0; i < 2 * per_blob; ++i) {
        const double center = i < per_blob ? 0.0 : spread;
        for (Index j = 0; j < d; ++j) m(i, j) = center + engine.gaussian();
    }
    return m;
}

LaplacianBundle random_bundle(std::uint64_t seed, int views, Index n, Index d) {
    rng::Engine engine(seed);
    std::vector<Laplacian> laps;
    for (int k = 0; k < views; ++k) laps.push_back(lap_from_features(blob_rows(engine, n / 2, d, 6.0)));
    return LaplacianBundle(std::move(laps));
}

Matrix random_orthonormal_cols(std::uint64_t seed, Index n, int c) {
    rng::Engine engine(seed);
    Matrix a = random_rows(engine, n, n);
    const Matrix sym = 0.5 * (a + a.transpose());
    return eigen_decompose(sym).eigenvectors.leftCols(c);
}

/// Reduced quadratic evaluated with explicit loops, sharing no code with the
/// solver: f(mu) = gamma*K * mu'Gram mu + sum_k mu_k (t_k - 2 gamma sum_i Gram_ki).
struct HandQp {
    Matrix gram;
    Vector t;
    double gamma;

    HandQp(const LaplacianBundle& bundle, const Matrix& basis, double g) : gamma(g) {
        const int k = bundle.views();
        const Index n = bundle.frames();
        gram = Matrix::Zero(k, k);
        for (int a = 0; a < k; ++a) {
            for (int b = 0; b < k; ++b) {
                double s = 0.0;
                for (Index i = 0; i < n; ++i)
                    for (Index j = 0; j < n; ++j)
                        s += bundle.view(a).data(i, j) * bundle.view(b).data(i, j);
                gram(a, b) = s;
            }
        }
        t = Vector::Zero(k);
        for (int a = 0; a < k; ++a) {
            double s = 0.0;
            for (Index col = 0; col < basis.cols(); ++col)
                for (Index i = 0; i < n; ++i)
                    for (Index j = 0; j < n; ++j)
                        s += basis(i, col) * bundle.view(a).data(i, j) * basis(j, col);
            t(a) = s;
        }
    }

    double reduced(const Vector& mu) const {
        const int k = static_cast<int>(mu.size());
        double q = 0.0;
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) q += mu(a) * gram(a, b) * mu(b);
        double lin = 0.0;
        for (int a = 0; a < k; ++a) {
            double row = 0.0;
            for (int b = 0; b < k; ++b) row += gram(a, b);
            lin += mu(a) * (t(a) - 2.0 * gamma * row);
        }
        return gamma * k * q + lin;
    }

    /// The full fixed-basis objective differs from the reduced one by the
    /// mu-independent constant gamma * sum_i ||L_i||^2 = gamma * tr(Gram).
    double full(const LaplacianBundle& bundle, const Vector& mu) const {
        const Index n = bundle.frames();
        Matrix comb = Matrix::Zero(n, n);
        for (int a = 0; a < bundle.views(); ++a) comb += mu(a) * bundle.view(a).data;
        double lin = 0.0;
        for (int a = 0; a < bundle.views(); ++a) lin += mu(a) * t(a);
        double dis = 0.0;
        for (int a = 0; a < bundle.views(); ++a)
            dis += (comb - bundle.view(a).data).squaredNorm();
        return lin + gamma * dis;
    }
};

}  // namespace

TEST_CASE("bundle validates view shapes and normalization") {
    CHECK_THROWS_AS(LaplacianBundle(std::vector<Laplacian>{}), InvalidParameterError);

    Matrix two(2, 2);
    two << 0.5, -0.5, -0.5, 0.5;
    Matrix three = Matrix::Identity(3, 3) / 3.0;
    CHECK_THROWS_AS(LaplacianBundle({lap_from_matrix(two), lap_from_matrix(three)}),
                    DimensionError);

    Laplacian unflagged{two, false};
    CHECK_THROWS_AS(LaplacianBundle({unflagged}), InvalidParameterError);

    Matrix off_trace(2, 2);
    off_trace << 0.6, -0.5, -0.5, 0.6;
    CHECK_THROWS_AS(LaplacianBundle({lap_from_matrix(off_trace)}), InvalidParameterError);

    Matrix asym(2, 2);
    asym << 0.5, -0.4, -0.6, 0.5;
    CHECK_THROWS_AS(LaplacianBundle({lap_from_matrix(asym)}), InvalidParameterError);

    const LaplacianBundle ok({lap_from_matrix(two), lap_from_matrix(two)});
    CHECK(ok.views() == 2);
    CHECK(ok.frames() == 2);
}

TEST_CASE("view weights validate the simplex") {
    Vector bad_sum(2);
    bad_sum << 0.5, 0.6;
    CHECK_THROWS_AS(ViewWeights::simplex(bad_sum), InvalidParameterError);

    Vector negative(2);
    negative << -0.1, 1.1;
    CHECK_THROWS_AS(ViewWeights::simplex(negative), InvalidParameterError);

    CHECK_THROWS_AS(ViewWeights::uniform(0), InvalidParameterError);

    const ViewWeights u = ViewWeights::uniform(4);
    CHECK(u.views() == 4);
    CHECK(u.mu(0) == 0.25);
}

TEST_CASE("eigen_decompose reconstructs and orders the spectrum") {
    rng::Engine engine(7);
    Matrix a = random_rows(engine, 30, 30);
    const Matrix sym = 0.5 * (a + a.transpose());
    const EigenDecomposition d = eigen_decompose(sym);

    const Matrix rebuilt =
        d.eigenvectors * d.eigenvalues.asDiagonal() * d.eigenvectors.transpose();
    CHECK((rebuilt - sym).norm() <= 1e-10 * sym.norm());
    const Matrix gram = d.eigenvectors.transpose() * d.eigenvectors;
    CHECK((gram - Matrix::Identity(30, 30)).cwiseAbs().maxCoeff() <= 1e-12);
    for (Index i = 1; i < 30; ++i) CHECK(d.eigenvalues(i) >= d.eigenvalues(i - 1));
}

TEST_CASE("eigen_decompose fixes signs by the largest-magnitude entry") {
    Vector v(2);
    v << -0.8, 0.6;
    const Matrix a = v * v.transpose();  // eigenvalues {0, 1}
    const EigenDecomposition d = eigen_decompose(a);
    CHECK(d.eigenvalues(0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(d.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-12));
    // the unit eigenvector is +-(-0.8, 0.6); the fix flips it to (0.8, -0.6)
    CHECK(d.eigenvectors(0, 1) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(d.eigenvectors(1, 1) == doctest::Approx(-0.6).epsilon(1e-12));
    // the null eigenvector (0.6, 0.8) already has its largest entry positive
    CHECK(d.eigenvectors(0, 0) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(d.eigenvectors(1, 0) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("eigen_decompose breaks magnitude ties toward the first entry") {
    Matrix swap(2, 2);
    swap << 0.0, 1.0, 1.0, 0.0;  // eigenvectors (1, -1)/sqrt(2) and (1, 1)/sqrt(2)
    const EigenDecomposition d = eigen_decompose(swap);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(d.eigenvectors(0, 0) == doctest::Approx(r).epsilon(1e-12));
    CHECK(d.eigenvectors(1, 0) == doctest::Approx(-r).epsilon(1e-12));
    CHECK(d.eigenvectors(0, 1) == doctest::Approx(r).epsilon(1e-12));
    CHECK(d.eigenvectors(1, 1) == doctest::Approx(r).epsilon(1e-12));
}

TEST_CASE("eigen_decompose rejects non-square and asymmetric input") {
    CHECK_THROWS_AS(eigen_decompose(Matrix::Zero(2, 3)), InvalidParameterError);
    Matrix asym(2, 2);
    asym << 0.0, 1.0, 2.0, 0.0;
    CHECK_THROWS_AS(eigen_decompose(asym), InvalidParameterError);
}

TEST_CASE("spectral_basis of the two-node laplacian at c = 1") {
    Matrix two(2, 2);
    two << 0.5, -0.5, -0.5, 0.5;
    const SpectralBasis b = spectral_basis(lap_from_matrix(two), 1);
    CHECK(b.vectors.cols() == 1);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(b.vectors(0, 0) == doctest::Approx(r).epsilon(1e-12));
    CHECK(b.vectors(1, 0) == doctest::Approx(r).epsilon(1e-12));
    CHECK(b.eigenvalues(0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(b.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("spectral_basis rejects out-of-range c") {
    Matrix two(2, 2);
    two << 0.5, -0.5, -0.5, 0.5;
    const Laplacian l = lap_from_matrix(two);
    CHECK_THROWS_AS(spectral_basis(l, 0), InvalidParameterError);
    CHECK_THROWS_AS(spectral_basis(l, 2), InvalidParameterError);
}

TEST_CASE("the basis attains the sum of the c smallest eigenvalues") {
    rng::Engine engine(9);
    const Laplacian l = lap_from_features(blob_rows(engine, 10, 3, 5.0));
    for (int c : {1, 2, 4}) {
        const SpectralBasis b = spectral_basis(l, c);
        const double quad = (l.data * b.vectors).cwiseProduct(b.vectors).sum();
        CHECK(quad == doctest::Approx(b.eigenvalues.head(c).sum()).epsilon(1e-10));
        CHECK(quad == doctest::Approx(structural_loss(l, c)).epsilon(1e-8));
    }
}

TEST_CASE("combine at a vertex returns that view, at midpoint the average") {
    rng::Engine engine(13);
    const Laplacian l0 = lap_from_features(blob_rows(engine, 5, 2, 5.0));
    const Laplacian l1 = lap_from_features(blob_rows(engine, 5, 2, 5.0));
    const LaplacianBundle bundle({l0, l1});

    Vector e0(2);
    e0 << 1.0, 0.0;
    const Laplacian at_vertex = combine(bundle, ViewWeights::simplex(e0));
    CHECK((at_vertex.data - l0.data).cwiseAbs().maxCoeff() == 0.0);
    CHECK(at_vertex.trace_normalized);

    const Laplacian mid = combine(bundle, ViewWeights::uniform(2));
    CHECK((mid.data - 0.5 * (l0.data + l1.data)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(mid.data.trace() == doctest::Approx(1.0).epsilon(1e-14));

    Vector three = Vector::Constant(3, 1.0 / 3.0);
    CHECK_THROWS_AS(combine(bundle, ViewWeights{three}), DimensionError);
}

TEST_CASE("structural_loss of the complete graph split two ways") {
    // I - J/3 has spectrum {0, 1, 1} and trace 2; normalized {0, 0.5, 0.5}
    Laplacian l;
    l.data = Matrix::Identity(3, 3) - Matrix::Constant(3, 3, 1.0 / 3.0);
    const Laplacian norm = trace_normalize(l);
    CHECK(structural_loss(norm, 2) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(structural_loss(norm, 1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(structural_loss(norm, 3), InvalidParameterError);
    CHECK_THROWS_AS(structural_loss(l, 2), InvalidParameterError);  // not normalized
}

TEST_CASE("structural_loss vanishes exactly at the component count") {
    // three disconnected cliques of sizes 3, 4, 5
    const std::vector<int> sizes{3, 4, 5};
    const Index n = 12;
    Matrix g = Matrix::Zero(n, n);
    Index at = 0;
    for (int s : sizes) {
        g.block(at, at, s, s).setOnes();
        at += s;
    }
    KernelMatrix kernel{g, 1.0};
    const Laplacian l = trace_normalize(normalized_laplacian(kernel));

    CHECK(structural_loss(l, 3) < 1e-10);
    // the fourth eigenvalue is 1/9: each clique contributes eigenvalue 1 with
    // multiplicity size-1, and the trace is 9
    CHECK(structural_loss(l, 4) == doctest::Approx(1.0 / 9.0).epsilon(1e-10));

    const SpectralBasis b = spectral_basis(l, 4);
    int near_zero = 0;
    for (Index i = 0; i < n; ++i)
        if (b.eigenvalues(i) < 1e-10) ++near_zero;
    CHECK(near_zero == 3);
}

TEST_CASE("disagreement_loss is zero only at a common matrix") {
    Matrix two(2, 2);
    two << 0.5, -0.5, -0.5, 0.5;
    // any two 2-node graphs normalize to the same matrix
    const LaplacianBundle pair({lap_from_matrix(two), lap_from_matrix(two)});
    CHECK(disagreement_loss(lap_from_matrix(two), pair) == 0.0);

    rng::Engine engine(17);
    const Laplacian l0 = lap_from_features(blob_rows(engine, 5, 2, 5.0));
    const Laplacian l1 = lap_from_features(blob_rows(engine, 5, 2, 5.0));
    const LaplacianBundle bundle({l0, l1});
    CHECK(disagreement_loss(l0, bundle) > 0.0);
    CHECK(disagreement_loss(l0, bundle) ==
          doctest::Approx((l0.data - l1.data).squaredNorm()).epsilon(1e-12));
}

TEST_CASE("disagreement_loss against one view is the squared distance") {
    Matrix m(3, 3);
    m << 0.4, -0.2, -0.1, -0.2, 0.35, -0.15, -0.1, -0.15, 0.25;
    const LaplacianBundle single({lap_from_matrix(m)});

    Matrix other(3, 3);
    other << 0.5, -0.3, -0.05, -0.3, 0.3, -0.1, -0.05, -0.1, 0.2;

    double by_hand = 0.0;
    for (Index i = 0; i < 3; ++i)
        for (Index j = 0; j < 3; ++j) {
            const double d = other(i, j) - m(i, j);
            by_hand += d * d;
        }
    CHECK(disagreement_loss(lap_from_matrix(other), single) ==
          doctest::Approx(by_hand).epsilon(1e-14));
}

TEST_CASE("objective composes the two losses") {
    const LaplacianBundle bundle = random_bundle(23, 3, 10, 2);
    const ViewWeights mu = ViewWeights::uniform(3);
    const Laplacian comb = combine(bundle, mu);
    for (double gamma : {0.0, 0.5, 10.0}) {
        const double expected =
            structural_loss(comb, 2) + gamma * disagreement_loss(comb, bundle);
        CHECK(objective(bundle, mu, 2, gamma) == doctest::Approx(expected).epsilon(1e-14));
    }
    CHECK_THROWS_AS(objective(bundle, mu, 2, -1.0), InvalidParameterError);
}

TEST_CASE("solve_weight_qp returns exact uniform weights on identical views") {
    rng::Engine engine(29);
    const Laplacian l = lap_from_features(blob_rows(engine, 6, 2, 5.0));
    for (int k : {2, 3, 5}) {
        const LaplacianBundle bundle(std::vector<Laplacian>(k, l));
        const Matrix basis = spectral_basis(l, 2).vectors;
        const ViewWeights mu = solve_weight_qp(bundle, basis, 1.0);
        for (int a = 0; a < k; ++a) CHECK(mu.mu(a) == 1.0 / k);
    }
}

TEST_CASE("solve_weight_qp balances two views with equal structural pull") {
    // two distinct 4-node matchings; both sum to zero entrywise, so against
    // the constant basis column the linear terms agree exactly and only the
    // disagreement (mu1^2 + mu2^2)*||L1 - L2||^2 decides
    Matrix l1 = Matrix::Zero(4, 4);
    l1.diagonal().setConstant(0.25);
    l1(0, 1) = l1(1, 0) = -0.25;
    l1(2, 3) = l1(3, 2) = -0.25;
    Matrix l2 = Matrix::Zero(4, 4);
    l2.diagonal().setConstant(0.25);
    l2(0, 2) = l2(2, 0) = -0.25;
    l2(1, 3) = l2(3, 1) = -0.25;
    const LaplacianBundle bundle({lap_from_matrix(l1), lap_from_matrix(l2)});

    const Matrix basis = Matrix::Constant(4, 1, 0.5);
    for (double gamma : {0.1, 1.0, 25.0}) {
        const ViewWeights mu = solve_weight_qp(bundle, basis, gamma);
        CHECK(mu.mu(0) == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(mu.mu(1) == doctest::Approx(0.5).epsilon(1e-9));
    }
}

TEST_CASE("solve_weight_qp beats a fine simplex grid") {
    // independent reduction: hand-looped Gram and trace terms, checked against
    // the full fixed-basis objective before the grid is trusted
    int instance = 0;
    for (std::uint64_t seed : {101ULL, 102ULL, 103ULL}) {
        for (double gamma : {0.0, 0.1, 1.0, 10.0}) {
            const int k = instance % 2 == 0 ? 2 : 3;
            const Index n = 12;
            const LaplacianBundle bundle = random_bundle(seed + 7 * instance, k, n, 2);
            const Matrix basis = random_orthonormal_cols(seed ^ 0xabcdULL, n, 2);
            const HandQp hand(bundle, basis, gamma);
            ++instance;

            // the reduced form must match the full objective up to the
            // mu-independent constant gamma * tr(Gram)
            rng::Engine probe(seed);
            for (int trial = 0; trial < 4; ++trial) {
                Vector mu(k);
                double sum = 0.0;
                for (int a = 0; a < k; ++a) {
                    mu(a) = probe.uniform() + 0.05;
                    sum += mu(a);
                }
                mu /= sum;
                const double constant = gamma * hand.gram.trace();
                CHECK(hand.full(bundle, mu) ==
                      doctest::Approx(hand.reduced(mu) + constant).epsilon(1e-9));
            }

            const ViewWeights solved = solve_weight_qp(bundle, basis, gamma);
            const double solved_value = hand.reduced(solved.mu);

            double grid_best = std::numeric_limits<double>::infinity();
            const int steps = 1000;
            if (k == 2) {
                for (int a = 0; a <= steps; ++a) {
                    Vector mu(2);
                    mu << a / 1000.0, (steps - a) / 1000.0;
                    grid_best = std::min(grid_best, hand.reduced(mu));
                }
            } else {
                for (int a = 0; a <= steps; ++a) {
                    for (int b = 0; b <= steps - a; ++b) {
                        Vector mu(3);
                        mu << a / 1000.0, b / 1000.0, (steps - a - b) / 1000.0;
                        grid_best = std::min(grid_best, hand.reduced(mu));
                    }
                }
            }
            CHECK(solved_value <= grid_best + 1e-6);
        }
    }
}

TEST_CASE("solve_weight_qp rejects too many views and bad arguments") {
    Matrix two(2, 2);
    two << 0.5, -0.5, -0.5, 0.5;
    const LaplacianBundle big(std::vector<Laplacian>(21, lap_from_matrix(two)));
    const Matrix basis = Matrix::Constant(2, 1, 1.0 / std::sqrt(2.0));
    CHECK_THROWS_AS(solve_weight_qp(big, basis, 1.0), UnsupportedSizeError);

    const LaplacianBundle ok(std::vector<Laplacian>(2, lap_from_matrix(two)));
    CHECK_THROWS_AS(solve_weight_qp(ok, basis, -0.5), InvalidParameterError);
    CHECK_THROWS_AS(solve_weight_qp(ok, Matrix::Constant(3, 1, 0.5), 1.0), DimensionError);
}

TEST_CASE("alternate on identical views settles immediately at uniform") {
    rng::Engine engine(31);
    const Laplacian l = lap_from_features(blob_rows(engine, 8, 2, 6.0));
    for (int k : {2, 3}) {
        const LaplacianBundle bundle(std::vector<Laplacian>(k, l));
        OptimizerConfig config;
        config.clusters = 2;
        config.gamma = 1.0;
        const OptimizerResult r = alternate(bundle, config);
        CHECK(r.converged);
        CHECK(r.iterations == 1);
        CHECK(r.objective_trace.size() == 2);
        for (int a = 0; a < k; ++a) CHECK(r.weights.mu(a) == 1.0 / k);
        // identical views leave nothing to trade off: the optimum is the
        // structural loss of the shared laplacian
        CHECK(r.objective_trace.back() ==
              doctest::Approx(structural_loss(l, 2)).epsilon(1e-9));
    }
}

TEST_CASE("alternate respects max_iters") {
    const LaplacianBundle bundle = random_bundle(37, 3, 12, 2);
    OptimizerConfig config;
    config.clusters = 2;
    config.max_iters = 1;
    const OptimizerResult r = alternate(bundle, config);
    CHECK(r.iterations == 1);
    CHECK(r.objective_trace.size() == 2);
}

TEST_CASE("alternate produces a non-increasing objective trace") {
    std::uint64_t seed = 41;
    for (int k : {2, 3}) {
        for (int c : {2, 3}) {
            for (double gamma : {0.0, 1.0, 100.0}) {
                const LaplacianBundle bundle = random_bundle(seed++, k, 16, 3);
                OptimizerConfig config;
                config.clusters = c;
                config.gamma = gamma;
                const OptimizerResult r = alternate(bundle, config);
                for (std::size_t i = 1; i < r.objective_trace.size(); ++i)
                    CHECK(r.objective_trace[i] <= r.objective_trace[i - 1] + 1e-9);
                CHECK(r.diagnostics.max_kyfan_residual <= 1e-8);
                CHECK(r.diagnostics.boundary_gap >= 0.0);
                CHECK(r.weights.mu.minCoeff() >= 0.0);
                CHECK(r.weights.mu.sum() == doctest::Approx(1.0).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("alternate favors the view with real cluster structure") {
    rng::Engine engine(53);
    // A tight bandwidth disconnects the two blobs, so this view's two smallest
    // eigenvalues are near zero; the noise view has no such null directions.
    FeatureMatrix blobby;
    blobby.data = blob_rows(engine, 10, 2, 8.0);
    const Laplacian structured =
        trace_normalize(normalized_laplacian(rbf_kernel(blobby, BandwidthPolicy::fixed(1.0))));
    const Laplacian noisy = lap_from_features(random_rows(engine, 20, 2));
    const LaplacianBundle bundle({structured, noisy});
    OptimizerConfig config;
    config.clusters = 2;
    config.gamma = 0.01;  // small enough that structure dominates
    const OptimizerResult r = alternate(bundle, config);
    CHECK(r.weights.mu(0) > 0.5);
}

TEST_CASE("alternate is bit-for-bit reproducible") {
    const LaplacianBundle bundle = random_bundle(59, 3, 14, 2);
    OptimizerConfig config;
    config.clusters = 3;
    config.gamma = 2.0;
    const OptimizerResult a = alternate(bundle, config);
    const OptimizerResult b = alternate(bundle, config);
    CHECK((a.weights.mu - b.weights.mu).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.basis - b.basis).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.combined.data - b.combined.data).cwiseAbs().maxCoeff() == 0.0);
    REQUIRE(a.objective_trace.size() == b.objective_trace.size());
    for (std::size_t i = 0; i < a.objective_trace.size(); ++i)
        CHECK(a.objective_trace[i] == b.objective_trace[i]);
}

TEST_CASE("alternate validates its configuration") {
    const LaplacianBundle bundle = random_bundle(61, 2, 10, 2);
    OptimizerConfig config;
    config.clusters = 1;
    CHECK_THROWS_AS(alternate(bundle, config), InvalidParameterError);
    config.clusters = 10;  // c must stay below n
    CHECK_THROWS_AS(alternate(bundle, config), InvalidParameterError);
    config.clusters = 2;
    config.max_iters = 0;
    CHECK_THROWS_AS(alternate(bundle, config), InvalidParameterError);
    config.max_iters = 10;
    config.tol = 0.0;
    CHECK_THROWS_AS(alternate(bundle, config), InvalidParameterError);
    config.tol = 1e-8;
    config.gamma = -1.0;
    CHECK_THROWS_AS(alternate(bundle, config), InvalidParameterError);
}
