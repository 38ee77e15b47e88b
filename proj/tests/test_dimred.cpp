#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "vnscale/dimred.hpp"
#include "vnscale/error.hpp"

#include <numbers>

using namespace vnscale;

namespace {

PointCloud equispaced_circle(Index n) {
    PointCloud c;
    c.points.resize(n, 3);
    for (Index i = 0; i < n; ++i) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
        c.points.row(i) << std::cos(t), std::sin(t), 0.0;
    }
    return c;
}

double max_radial_deviation(const Eigen::MatrixXd& Y) {
    const Eigen::VectorXd radius = Y.rowwise().norm();
    const double mean = radius.mean();
    return (radius.array() / mean - 1.0).abs().maxCoeff();
}

}  // namespace

TEST_CASE("an equispaced circle embeds onto a circle") {
    const auto e = reduce(equispaced_circle(200), 2);
    REQUIRE(e.coords.rows() == 200);
    REQUIRE(e.coords.cols() == 2);
    CHECK(e.kernel_dim == 1);
    CHECK(max_radial_deviation(e.coords) <= 0.05);
    // Consecutive points stay neighbours in the embedding.
    CHECK(neighbor_overlap(equispaced_circle(200).points, e.coords, 2) == doctest::Approx(1.0));
}

TEST_CASE("embedding columns are orthonormal eigenvectors above the kernel") {
    std::mt19937_64 rng(5);
    PointCloud c;
    c.points = oracle::random_points(40, 3, rng);
    const auto d = pairwise_distances(c);
    for (double frac : {0.15, 0.3, 0.6}) {
        const double r = frac * d.diam;
        const auto lap = laplacian(build_graph(d, r));
        const Eigen::MatrixXd& L = lap.L;
        const Index kernel = kernel_dimension(eigendecompose(lap, false).mu);
        const Index k = std::min<Index>(5, 40 - kernel);
        const auto e = embed_at_scale(d, r, k);
        CHECK(e.kernel_dim == kernel);
        const Eigen::MatrixXd gram = e.coords.transpose() * e.coords;
        CHECK((gram - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff() < 1e-8);
        for (Index j = 0; j < k; ++j) {
            CHECK(e.eigvals_used(j) > 0.0);
            if (j > 0) CHECK(e.eigvals_used(j) >= e.eigvals_used(j - 1));
            const Eigen::VectorXd residual = L * e.coords.col(j) - e.eigvals_used(j) * e.coords.col(j);
            CHECK(residual.norm() < 1e-8 * std::max(1.0, e.eigvals_used(j)));
        }
    }
}

TEST_CASE("the full embedding spans the complement of the kernel") {
    std::mt19937_64 rng(6);
    PointCloud c;
    c.points.resize(24, 2);
    std::normal_distribution<double> noise(0.0, 0.05);
    for (Index i = 0; i < 24; ++i) c.points.row(i) << 10.0 * (i % 3) + noise(rng), noise(rng);
    const auto d = pairwise_distances(c);
    const double r = 2.0;
    const auto e = embed_at_scale(d, r, 24 - 3);
    CHECK(e.kernel_dim == 3);
    // Each column is orthogonal to the component indicators.
    for (int comp = 0; comp < 3; ++comp) {
        Eigen::VectorXd ind = Eigen::VectorXd::Zero(24);
        for (Index i = comp; i < 24; i += 3) ind(i) = 1.0;
        CHECK((e.coords.transpose() * ind).cwiseAbs().maxCoeff() < 1e-8);
    }
    CHECK_THROWS_AS(embed_at_scale(d, r, 22), KTooLarge);
}

TEST_CASE("KTooLarge reports the available count") {
    PointCloud c;
    c.points = Eigen::MatrixXd::Identity(4, 4);  // all pairwise distances sqrt(2)
    const auto d = pairwise_distances(c);
    try {
        (void)embed_at_scale(d, 2.0, 4);
        FAIL("expected KTooLarge");
    } catch (const KTooLarge& ex) {
        CHECK(ex.requested() == 4);
        CHECK(ex.available() == 3);
        CHECK(std::string(ex.what()).find("only 3") != std::string::npos);
    }
    CHECK_THROWS_AS(embed_at_scale(d, 2.0, 0), InvalidArgument);
    // Edgeless scale: the whole spectrum is kernel.
    CHECK_THROWS_AS(embed_at_scale(d, 1.0, 1), KTooLarge);
}

TEST_CASE("sign convention") {
    Eigen::MatrixXd m(3, 2);
    m << 0.0, 1e-9,
        -2.0, -1.0,
         1.0, 3.0;
    apply_sign_convention(m);
    CHECK(m(1, 0) == 2.0);
    CHECK(m(2, 0) == -1.0);
    CHECK(m(0, 1) == -1e-9);
    CHECK(m(1, 1) == 1.0);
}

TEST_CASE("embedding is invariant to point relabeling up to row permutation") {
    const auto c = gen_shape(ShapeKind::trefoil, 120, 0.0, 3);
    const auto d = pairwise_distances(c);
    const double r = 0.1 * d.diam;
    const auto e = embed_at_scale(d, r, 2);

    std::vector<Index> perm(120);
    std::iota(perm.begin(), perm.end(), Index{0});
    std::mt19937_64 rng(9);
    std::shuffle(perm.begin(), perm.end(), rng);
    PointCloud shuffled;
    shuffled.points.resize(120, 3);
    for (Index i = 0; i < 120; ++i) shuffled.points.row(i) = c.points.row(perm[i]);
    const auto e2 = embed_at_scale(pairwise_distances(shuffled), r, 2);
    CHECK((e.eigvals_used - e2.eigvals_used).cwiseAbs().maxCoeff() < 1e-9);
    // Eigenvectors are determined up to sign when the eigenvalues are simple;
    // compare the row-permuted columns up to sign.
    for (Index j = 0; j < 2; ++j) {
        if (j + 1 < 2 && std::abs(e.eigvals_used(j + 1) - e.eigvals_used(j)) < 1e-6) continue;
        double same = 0.0, flipped = 0.0;
        for (Index i = 0; i < 120; ++i) {
            same = std::max(same, std::abs(e2.coords(i, j) - e.coords(perm[i], j)));
            flipped = std::max(flipped, std::abs(e2.coords(i, j) + e.coords(perm[i], j)));
        }
        CHECK(std::min(same, flipped) < 1e-6);
    }
}

TEST_CASE("neighbor overlap") {
    std::mt19937_64 rng(7);
    const Eigen::MatrixXd a = oracle::random_points(50, 3, rng);
    CHECK(neighbor_overlap(a, a, 10) == doctest::Approx(1.0));
    CHECK(neighbor_overlap(a, 3.0 * a, 10) == doctest::Approx(1.0));
    const Eigen::MatrixXd b = oracle::random_points(50, 3, rng);
    const double o = neighbor_overlap(a, b, 10);
    CHECK(o >= 0.0);
    CHECK(o < 0.6);
    CHECK_THROWS_AS(neighbor_overlap(a, b.topRows(10), 5), InvalidArgument);
    CHECK_THROWS_AS(neighbor_overlap(a, b, 50), InvalidArgument);
}
