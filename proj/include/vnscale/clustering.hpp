#pragma once

#include "vnscale/entropy.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace vnscale {

/// Output of the modified Gaussian elimination. Column `pos` of psi belongs to
/// vertex col_perm[pos].
struct IndicatorMatrix {
    Eigen::MatrixXd psi;  // k x n
    std::vector<Index> col_perm;

    Index rows() const noexcept { return psi.rows(); }
    Index cols() const noexcept { return psi.cols(); }
};

struct ClusterAssignment {
    std::vector<int> labels;
    Index k = 0;
    double r_hat = 0.0;
    ScaleSelection selection;
    EntropyProfile profile;
};

/// Column-pivoted elimination that turns a kernel basis (rows) into rows that
/// are approximately 0/1 component indicators. For each row i the largest
/// |entry| among columns i..n-1 is swapped into column i, row i is scaled by it
/// and column i is cleared from every other row. Throws PivotUnderflow when a
/// pivot magnitude falls below 1e-12.
IndicatorMatrix modified_gaussian_elimination(Eigen::MatrixXd kernel);

/// Sends vertex m to the standard basis vector e_i nearest to its column of psi.
/// Ties go to the smaller i.
std::vector<int> assign_clusters(const IndicatorMatrix& ind);

/// Clusters a cloud at its own entropy-selected scale: no cluster count needed.
/// Throws DuplicatePoints or PivotUnderflow.
ClusterAssignment cluster(const PointCloud& cloud, const SweepOptions& opts = {});

/// Same pipeline starting from precomputed distances.
ClusterAssignment cluster(const DistanceMatrix& d, const SweepOptions& opts = {});

/// Clusters G_r at a fixed scale through the kernel of its Laplacian.
std::vector<int> cluster_at_scale(const DistanceMatrix& d, double r,
                                  double kernel_tol = kDefaultKernelTol);

struct KMeansOptions {
    Index k = 3;
    Index max_iters = 300;
    Index n_init = 10;
    std::uint64_t seed = 0;
};

struct KMeansResult {
    std::vector<int> labels;
    Index k = 0;
    double cost = 0.0;                 // within-cluster sum of squares
    Eigen::MatrixXd centroids;         // k x d
    std::vector<double> cost_history;  // winning restart, one entry per Lloyd step
    Index best_restart = 0;
};

/// Lloyd's algorithm from n_init initializations of k distinct random points,
/// keeping the lowest cost (ties to the earlier restart). Restarts run in
/// parallel and are seeded independently, so results depend only on opts.
/// Throws InvalidArgument for k < 1 or k > n.
KMeansResult kmeans(const PointCloud& cloud, const KMeansOptions& opts);

struct ConfusionMatrix {
    std::vector<std::vector<Index>> counts;  // k_true x k_pred
    Index mistakes = 0;
    Index n = 0;
};

/// Largest total weight of a one-to-one matching of rows to columns.
/// Exhaustive over permutations when min(rows, cols) <= 8, Hungarian otherwise.
Index max_matching_weight(const std::vector<std::vector<Index>>& w);

/// Hungarian method only; exposed so tests can compare it with enumeration.
Index max_matching_weight_hungarian(const std::vector<std::vector<Index>>& w);

/// Confusion counts and mistakes = n - best matching of predicted clusters to
/// true classes. Labels must be non-negative. Throws InvalidArgument on length
/// mismatch.
ConfusionMatrix score(std::span<const int> pred, std::span<const int> truth);

/// True when the two labelings induce the same partition.
bool same_partition(std::span<const int> a, std::span<const int> b);

}  // namespace vnscale
