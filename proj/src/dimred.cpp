#include "vnscale/dimred.hpp"

#include "vnscale/error.hpp"

#include <algorithm>
#include <numeric>

namespace vnscale {

namespace {

constexpr double kSignEps = 1e-8;

std::vector<std::vector<Index>> nearest_neighbors(const Eigen::MatrixXd& X, Index k) {
    const Index n = X.rows();
    std::vector<std::vector<Index>> out(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < n; ++i) {
        std::vector<std::pair<double, Index>> d;
        d.reserve(static_cast<std::size_t>(n - 1));
        for (Index j = 0; j < n; ++j) {
            if (j != i) d.emplace_back((X.row(i) - X.row(j)).squaredNorm(), j);
        }
        std::partial_sort(d.begin(), d.begin() + k, d.end());
        auto& nn = out[i];
        for (Index t = 0; t < k; ++t) nn.push_back(d[t].second);
        std::sort(nn.begin(), nn.end());
    }
    return out;
}

}  // namespace

void apply_sign_convention(Eigen::MatrixXd& columns) {
    for (Index c = 0; c < columns.cols(); ++c) {
        for (Index r = 0; r < columns.rows(); ++r) {
            const double x = columns(r, c);
            if (std::abs(x) > kSignEps) {
                if (x < 0.0) columns.col(c) *= -1.0;
                break;
            }
        }
    }
}

Embedding embed_at_scale(const DistanceMatrix& d, double r, Index k, double kernel_tol) {
    if (k < 1) throw InvalidArgument("embedding dimension must be at least 1");
    const Spectrum s = eigendecompose(laplacian(build_graph(d, r)));
    const Index kernel = kernel_dimension(s.mu, kernel_tol);
    const Index available = s.size() - kernel;
    if (k > available) throw KTooLarge(k, available);

    Embedding e;
    e.r_hat = r;
    e.kernel_dim = kernel;
    e.coords = s.U.middleCols(kernel, k);
    e.eigvals_used = s.mu.segment(kernel, k);
    apply_sign_convention(e.coords);
    return e;
}

Embedding reduce(const PointCloud& cloud, Index k, const SweepOptions& opts) {
    const DistanceMatrix d = pairwise_distances(cloud);
    EntropyProfile profile = entropy_sweep(d, opts);
    const ScaleSelection sel = select_scale(profile);
    Embedding e = embed_at_scale(d, sel.r_hat, k, opts.kernel_tol);
    e.profile = std::move(profile);
    return e;
}

double neighbor_overlap(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, Index k) {
    if (a.rows() != b.rows()) throw InvalidArgument("neighbor_overlap needs the same points in both");
    if (k < 1 || k >= a.rows()) throw InvalidArgument("neighbor count must be in [1, n)");
    const auto na = nearest_neighbors(a, k);
    const auto nb = nearest_neighbors(b, k);
    double total = 0.0;
    for (std::size_t i = 0; i < na.size(); ++i) {
        std::vector<Index> common;
        std::set_intersection(na[i].begin(), na[i].end(), nb[i].begin(), nb[i].end(),
                              std::back_inserter(common));
        const double inter = static_cast<double>(common.size());
        total += inter / (2.0 * static_cast<double>(k) - inter);
    }
    return total / static_cast<double>(na.size());
}

}  // namespace vnscale
