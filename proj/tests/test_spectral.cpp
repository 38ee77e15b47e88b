#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "vnscale/error.hpp"
#include "vnscale/spectral.hpp"

#include <algorithm>
#include <cmath>

using namespace vnscale;

namespace {

WeightedGraph two_vertices(double w) {
    WeightedGraph g;
    g.n = 2;
    g.scale = w;
    g.edges.push_back({0, 1, w});
    return g;
}

void check_spectrum_invariants(const LaplacianMatrix& L, const Spectrum& s) {
    const Index n = s.size();
    CHECK((s.U.transpose() * s.U - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-8);
    for (Index i = 0; i < n; ++i) {
        const double resid = (L.L * s.U.col(i) - s.mu(i) * s.U.col(i)).norm();
        CHECK(resid < 1e-8 * (1.0 + std::abs(s.mu(i))));
        if (i > 0) CHECK(s.mu(i) >= s.mu(i - 1));
    }
    CHECK(s.mu(0) >= -1e-10 * s.mu(n - 1));
}

}  // namespace

TEST_CASE("Laplacian of an edgeless graph is zero") {
    WeightedGraph g;
    g.n = 6;
    g.scale = 1.0;
    CHECK(laplacian(g).L == Eigen::MatrixXd::Zero(6, 6));
}

TEST_CASE("Laplacian and spectrum of a single edge") {
    const auto L = laplacian(two_vertices(2.0));
    Eigen::Matrix2d expected;
    expected << 2, -2, -2, 2;
    CHECK(L.L == Eigen::MatrixXd(expected));
    const auto s = eigendecompose(L);
    CHECK(s.mu(0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(s.mu(1) == doctest::Approx(4.0).epsilon(1e-14));
    check_spectrum_invariants(L, s);
}

TEST_CASE("Laplacian matches D - W on a random graph") {
    std::mt19937_64 rng(15);
    const auto g = oracle::planted_graph(15, 2, 0.5, rng);
    const auto L = laplacian(g);
    CHECK((L.L - oracle::laplacian_from_adjacency(oracle::adjacency(g))).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(L.L.rowwise().sum().cwiseAbs().maxCoeff() <= 1e-10 * L.L.cwiseAbs().maxCoeff());
    CHECK((L.L - L.L.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("eigendecomposition of the zero matrix") {
    const auto s = eigendecompose(LaplacianMatrix{Eigen::MatrixXd::Zero(5, 5)});
    CHECK(s.mu.cwiseAbs().maxCoeff() == 0.0);
    CHECK((s.U.transpose() * s.U - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("eigendecomposition reconstructs random Laplacians") {
    std::mt19937_64 rng(20);
    for (int trial = 0; trial < 10; ++trial) {
        const auto g = oracle::planted_graph(20, 1 + trial % 3, 0.4, rng);
        const auto L = laplacian(g);
        const auto s = eigendecompose(L);
        const Eigen::MatrixXd rebuilt = s.U * s.mu.asDiagonal() * s.U.transpose();
        CHECK((rebuilt - L.L).cwiseAbs().maxCoeff() < 1e-8);
        check_spectrum_invariants(L, s);
        CHECK(s.mu.minCoeff() >= 0.0);

        const auto values_only = eigendecompose(L, false);
        CHECK_FALSE(values_only.has_vectors());
        CHECK((values_only.mu - s.mu).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("non-finite Laplacians are rejected") {
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(2, 2);
    L(0, 0) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(eigendecompose(LaplacianMatrix{L}), InvalidArgument);
}

TEST_CASE("per-component eigenvalues equal the full dense spectrum") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = oracle::planted_graph(10 + 3 * trial, 1 + trial % 6, 0.35, rng);
        const auto full = eigendecompose(laplacian(g), false).mu;
        const auto blocks = laplacian_eigenvalues(g, connected_components(g));
        REQUIRE(blocks.size() == full.size());
        CHECK((blocks - full).cwiseAbs().maxCoeff() < 1e-10 * std::max(1.0, full.maxCoeff()));
    }
}

TEST_CASE("heat density of an edgeless graph is uniform") {
    const Eigen::VectorXd mu = Eigen::VectorXd::Zero(7);
    for (double t : {0.5, 1.0, 1000.0}) {
        const auto lp = heat_density_log_eigenvalues(mu, t);
        CHECK((lp.array() + std::log(7.0)).abs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("heat density of the two-level spectrum") {
    Eigen::VectorXd mu(2);
    mu << 0.0, 4.0;
    const Eigen::ArrayXd p = heat_density_log_eigenvalues(mu, 1.0).array().exp();
    CHECK(p(0) == doctest::Approx(1.0 / (1.0 + std::exp(-4.0))).epsilon(1e-15));
    CHECK(p(1) == doctest::Approx(std::exp(-4.0) / (1.0 + std::exp(-4.0))).epsilon(1e-14));
    CHECK_THROWS_AS(heat_density_log_eigenvalues(mu, 0.0), InvalidArgument);
}

TEST_CASE("heat density matches the dense normalized matrix exponential") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 5; ++trial) {
        const auto g = oracle::planted_graph(12, 1 + trial, 0.5, rng);
        const auto L = laplacian(g);
        const Eigen::MatrixXd rho = oracle::normalized_heat(L.L, 1.0);
        Eigen::VectorXd dense = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(rho).eigenvalues();
        Eigen::VectorXd p = heat_density_log_eigenvalues(eigendecompose(L, false).mu, 1.0).array().exp();
        std::sort(dense.begin(), dense.end());
        std::sort(p.begin(), p.end());
        CHECK((dense - p).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(std::abs(p.sum() - 1.0) < 1e-12);
    }
}

TEST_CASE("spectral heat operators satisfy the semigroup law") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 5; ++trial) {
        const auto g = oracle::planted_graph(16, 1 + trial % 3, 0.5, rng);
        const auto L = laplacian(g);
        const auto s = eigendecompose(L);
        const Eigen::MatrixXd h1 = s.U * (-s.mu).array().exp().matrix().asDiagonal() * s.U.transpose();
        const Eigen::MatrixXd h2 = (-2.0 * L.L).exp();
        CHECK((h1 * h1 - h2).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("logsumexp is stable") {
    const std::vector<double> big{1000.0, 1000.0};
    CHECK(logsumexp(big) == doctest::Approx(1000.0 + std::log(2.0)));
    const std::vector<double> small{-1000.0, -1001.0};
    CHECK(logsumexp(small) == doctest::Approx(-1000.0 + std::log1p(std::exp(-1.0))));
    CHECK(std::isinf(logsumexp({})));
}

TEST_CASE("kernel basis") {
    SUBCASE("edgeless graph") {
        WeightedGraph g;
        g.n = 9;
        g.scale = 1.0;
        const auto s = eigendecompose(laplacian(g));
        CHECK(kernel_basis(s).rows() == 9);
        CHECK(smallest_positive_eigenvalue(s.mu) == 0.0);
    }
    SUBCASE("connected graph has a constant kernel vector") {
        std::mt19937_64 rng(8);
        const auto g = oracle::planted_graph(20, 1, 0.6, rng);
        REQUIRE(connected_components(g).count == 1);
        const auto K = kernel_basis(eigendecompose(laplacian(g)));
        REQUIRE(K.rows() == 1);
        CHECK(K.maxCoeff() - K.minCoeff() < 1e-8);
        CHECK(std::abs(K.cwiseAbs().maxCoeff() - 1.0 / std::sqrt(20.0)) < 1e-8);
    }
    SUBCASE("kernel vectors are constant on components") {
        std::mt19937_64 rng(9);
        for (int trial = 0; trial < 20; ++trial) {
            const auto g = oracle::planted_graph(12 + trial, 3, 0.6, rng);
            const auto comps = connected_components(g);
            const auto s = eigendecompose(laplacian(g));
            const auto K = kernel_basis(s);
            CHECK(K.rows() == comps.count);
            CHECK(kernel_dimension(s.mu) == comps.count);
            for (Index r = 0; r < K.rows(); ++r) {
                for (Index c = 0; c < comps.count; ++c) {
                    double lo = INFINITY, hi = -INFINITY;
                    for (Index v = 0; v < g.n; ++v) {
                        if (comps.labels[v] == c) {
                            lo = std::min(lo, K(r, v));
                            hi = std::max(hi, K(r, v));
                        }
                    }
                    CHECK(hi - lo < 1e-8);
                }
            }
        }
    }
    CHECK_THROWS_AS(kernel_basis(Spectrum{Eigen::VectorXd::Zero(2), {}}), InvalidArgument);
}
