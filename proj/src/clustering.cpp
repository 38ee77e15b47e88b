#include "vnscale/clustering.hpp"

#include "vnscale/error.hpp"

#include <cmath>
#include <unordered_map>
#include <numeric>

namespace vnscale {

namespace {

constexpr double kPivotFloor = 1e-12;

}  // namespace

IndicatorMatrix modified_gaussian_elimination(Eigen::MatrixXd kernel) {
    const Index k = kernel.rows();
    const Index n = kernel.cols();
    if (k < 1) throw InvalidArgument("kernel basis must have at least one row");
    if (k > n) throw InvalidArgument("kernel basis has more rows than columns");

    IndicatorMatrix out;
    out.col_perm.resize(static_cast<std::size_t>(n));
    std::iota(out.col_perm.begin(), out.col_perm.end(), Index{0});

    for (Index i = 0; i < k; ++i) {
        Index best = i;
        kernel.row(i).tail(n - i).cwiseAbs().maxCoeff(&best);
        best += i;
        if (best != i) {
            kernel.col(i).swap(kernel.col(best));
            std::swap(out.col_perm[i], out.col_perm[best]);
        }
        const double pivot = kernel(i, i);
        if (std::abs(pivot) < kPivotFloor) {
            throw PivotUnderflow("pivot " + std::to_string(pivot) + " in row " + std::to_string(i) +
                                 " is below 1e-12; kernel basis is numerically degenerate");
        }
        kernel.row(i) /= pivot;
        for (Index r = 0; r < k; ++r) {
            if (r == i) continue;
            const double factor = kernel(r, i);
            if (factor != 0.0) kernel.row(r) -= factor * kernel.row(i);
        }
    }
    out.psi = std::move(kernel);
    return out;
}

std::vector<int> assign_clusters(const IndicatorMatrix& ind) {
    const Index k = ind.rows();
    const Index n = ind.cols();
    std::vector<int> labels(static_cast<std::size_t>(n), 0);
    for (Index pos = 0; pos < n; ++pos) {
        const Eigen::VectorXd v = ind.psi.col(pos);
        // ||v - e_i||^2 = ||v||^2 - 2 v_i + 1, so the nearest e_i has the largest v_i.
        Index best = 0;
        double best_d2 = (v - Eigen::VectorXd::Unit(k, 0)).squaredNorm();
        for (Index i = 1; i < k; ++i) {
            const double d2 = (v - Eigen::VectorXd::Unit(k, i)).squaredNorm();
            if (d2 < best_d2) {
                best_d2 = d2;
                best = i;
            }
        }
        labels[ind.col_perm[pos]] = static_cast<int>(best);
    }
    return labels;
}

std::vector<int> cluster_at_scale(const DistanceMatrix& d, double r, double kernel_tol) {
    const Spectrum s = eigendecompose(laplacian(build_graph(d, r)));
    return assign_clusters(modified_gaussian_elimination(kernel_basis(s, kernel_tol)));
}

ClusterAssignment cluster(const DistanceMatrix& d, const SweepOptions& opts) {
    ClusterAssignment out;
    out.profile = entropy_sweep(d, opts);
    out.selection = select_scale(out.profile);
    out.r_hat = out.selection.r_hat;
    const Spectrum s = eigendecompose(laplacian(build_graph(d, out.r_hat)));
    const Eigen::MatrixXd kernel = kernel_basis(s, opts.kernel_tol);
    out.k = kernel.rows();
    out.labels = assign_clusters(modified_gaussian_elimination(kernel));
    return out;
}

ClusterAssignment cluster(const PointCloud& cloud, const SweepOptions& opts) {
    return cluster(pairwise_distances(cloud), opts);
}

bool same_partition(std::span<const int> a, std::span<const int> b) {
    if (a.size() != b.size()) return false;
    std::unordered_map<int, int> ab, ba;
    for (std::size_t m = 0; m < a.size(); ++m) {
        const auto ia = ab.try_emplace(a[m], b[m]).first;
        const auto ib = ba.try_emplace(b[m], a[m]).first;
        if (ia->second != b[m] || ib->second != a[m]) return false;
    }
    return true;
}

}  // namespace vnscale
