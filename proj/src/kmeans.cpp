#include "vnscale/clustering.hpp"

#include "vnscale/error.hpp"

#include <cassert>
#include <limits>
#include <numeric>
#include <random>

namespace vnscale {

namespace {

struct Run {
    std::vector<int> labels;
    Eigen::MatrixXd centroids;
    std::vector<double> costs;
};

// Assigns each point to its nearest centroid (ties to the lower index) and
// returns the within-cluster sum of squares.
double assign(const Eigen::MatrixXd& X, const Eigen::MatrixXd& C, std::vector<int>& labels) {
    double cost = 0.0;
    for (Index m = 0; m < X.rows(); ++m) {
        int best = 0;
        double best_d2 = std::numeric_limits<double>::infinity();
        for (Index c = 0; c < C.rows(); ++c) {
            const double d2 = (X.row(m) - C.row(c)).squaredNorm();
            if (d2 < best_d2) {
                best_d2 = d2;
                best = static_cast<int>(c);
            }
        }
        labels[m] = best;
        cost += best_d2;
    }
    return cost;
}

Run lloyd(const Eigen::MatrixXd& X, Index k, Index max_iters, std::uint64_t seed, Index restart) {
    const Index n = X.rows();
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(restart)};
    std::mt19937_64 rng(seq);

    // k distinct starting points by partial Fisher-Yates.
    std::vector<Index> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), Index{0});
    for (Index i = 0; i < k; ++i) {
        std::uniform_int_distribution<Index> pick(i, n - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }

    Run run;
    run.centroids.resize(k, X.cols());
    for (Index c = 0; c < k; ++c) run.centroids.row(c) = X.row(idx[c]);
    run.labels.assign(static_cast<std::size_t>(n), -1);

    std::vector<int> prev;
    for (Index it = 0; it < std::max<Index>(max_iters, 1); ++it) {
        prev = run.labels;
        const double cost = assign(X, run.centroids, run.labels);
        assert(run.costs.empty() || cost <= run.costs.back() * (1.0 + 1e-12) + 1e-12);
        run.costs.push_back(cost);
        if (run.labels == prev) break;

        Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, X.cols());
        std::vector<Index> counts(static_cast<std::size_t>(k), 0);
        for (Index m = 0; m < n; ++m) {
            sums.row(run.labels[m]) += X.row(m);
            ++counts[run.labels[m]];
        }
        for (Index c = 0; c < k; ++c) {
            // An emptied cluster keeps its previous centroid.
            if (counts[c] > 0) run.centroids.row(c) = sums.row(c) / static_cast<double>(counts[c]);
        }
    }
    return run;
}

}  // namespace

KMeansResult kmeans(const PointCloud& cloud, const KMeansOptions& opts) {
    cloud.validate();
    const Index n = cloud.size();
    if (opts.k < 1 || opts.k > n) {
        throw InvalidArgument("k-means needs 1 <= k <= n (k = " + std::to_string(opts.k) +
                              ", n = " + std::to_string(n) + ")");
    }
    if (opts.n_init < 1) throw InvalidArgument("n_init must be positive");

    std::vector<Run> runs(static_cast<std::size_t>(opts.n_init));
#pragma omp parallel for schedule(dynamic, 1)
    for (Index r = 0; r < opts.n_init; ++r) {
        runs[r] = lloyd(cloud.points, opts.k, opts.max_iters, opts.seed, r);
    }

    Index best = 0;
    for (Index r = 1; r < opts.n_init; ++r) {
        if (runs[r].costs.back() < runs[best].costs.back()) best = r;
    }

    KMeansResult out;
    out.k = opts.k;
    out.best_restart = best;
    out.cost = runs[best].costs.back();
    out.labels = std::move(runs[best].labels);
    out.centroids = std::move(runs[best].centroids);
    out.cost_history = std::move(runs[best].costs);
    return out;
}

}  // namespace vnscale
