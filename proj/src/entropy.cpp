#include "vnscale/entropy.hpp"

#include "vnscale/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <exception>
#include <limits>

namespace vnscale {

namespace {

constexpr double kSupportRel = 1e-12;

bool is_symmetric(const Eigen::MatrixXd& A) {
    if (A.rows() != A.cols()) return false;
    const double scale = std::max(A.cwiseAbs().maxCoeff(), 1.0);
    return (A - A.transpose()).cwiseAbs().maxCoeff() <= 1e-10 * scale;
}

void check_sweep_options(const SweepOptions& opts) {
    if (opts.grid_size < 2) throw InvalidArgument("grid_size must be at least 2");
    if (!(opts.t_star > 1.0)) throw InvalidArgument("t_star must exceed 1");
    if (!(opts.kernel_tol > 0.0)) throw InvalidArgument("kernel_tol must be positive");
}

void check_distances(const DistanceMatrix& d) {
    if (d.size() < 1) throw InvalidArgument("empty distance matrix");
    if (!(d.diam > 0.0)) throw InvalidArgument("cloud has zero diameter; nothing to sweep");
    check_no_duplicates(d);
}

// G_r without the duplicate scan; callers have already run it once.
WeightedGraph graph_at(const DistanceMatrix& d, double r) {
    WeightedGraph g;
    g.n = d.size();
    g.scale = r;
    for (Index i = 0; i < g.n; ++i) {
        for (Index j = i + 1; j < g.n; ++j) {
            if (d(i, j) <= r) g.edges.push_back({i, j, d(i, j)});
        }
    }
    return g;
}

EntropyProfile empty_profile(const DistanceMatrix& d, const SweepOptions& opts) {
    EntropyProfile p;
    p.t_star = opts.t_star;
    p.r_grid = scale_grid(d.diam, opts.grid_size);
    const auto m = p.r_grid.size();
    p.H.assign(m, 0.0);
    p.components.assign(m, 0);
    p.kernel_dim.assign(m, 0);
    p.min_positive_mu.assign(m, 0.0);
    return p;
}

void record(EntropyProfile& p, std::size_t g, const Eigen::VectorXd& mu, Index components,
            const SweepOptions& opts) {
    p.H[g] = relative_vn_entropy_spectral(mu, 1.0, opts.t_star);
    p.components[g] = components;
    p.kernel_dim[g] = kernel_dimension(mu, opts.kernel_tol);
    p.min_positive_mu[g] = smallest_positive_eigenvalue(mu, opts.kernel_tol);
}

}  // namespace

double relative_vn_entropy_spectral(const Eigen::VectorXd& mu, double t1, double t2) {
    if (!(t1 > 0.0) || !(t2 >= t1)) throw InvalidArgument("need 0 < t1 <= t2");
    if (mu.size() == 0) throw InvalidArgument("empty spectrum");
    if (!mu.allFinite() || mu.minCoeff() < 0.0) {
        throw InvalidArgument("Laplacian eigenvalues must be finite and non-negative");
    }

    const Eigen::VectorXd log_p = heat_density_log_eigenvalues(mu, t1);
    const Eigen::VectorXd a2 = -t2 * mu;
    const Eigen::VectorXd a1 = -t1 * mu;
    const double log_z1 = logsumexp({a1.data(), static_cast<std::size_t>(a1.size())});
    const double log_z2 = logsumexp({a2.data(), static_cast<std::size_t>(a2.size())});

    const double mean_mu = (log_p.array().exp() * mu.array()).sum();
    return (t2 - t1) * mean_mu - log_z1 + log_z2;
}

double relative_vn_entropy_dense(const Eigen::MatrixXd& rho, const Eigen::MatrixXd& sigma) {
    if (!is_symmetric(rho) || !is_symmetric(sigma)) throw InvalidArgument("operators must be symmetric");
    if (rho.rows() != sigma.rows()) throw InvalidArgument("operator sizes differ");
    if (std::abs(rho.trace() - 1.0) > 1e-6) throw InvalidArgument("rho must have unit trace");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> er(rho);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma);
    const Eigen::VectorXd& lr = er.eigenvalues();
    const Eigen::VectorXd& ls = es.eigenvalues();
    const double rho_cut = kSupportRel * std::max(lr.maxCoeff(), 0.0);
    const double sigma_cut = kSupportRel * std::max(ls.maxCoeff(), 0.0);

    double h = 0.0;
    for (Index i = 0; i < lr.size(); ++i) {
        if (lr(i) > rho_cut) h += lr(i) * std::log(lr(i));  // 0 log 0 = 0
    }
    // Tr(rho log sigma) = sum_j log(s_j) <v_j, rho v_j> over the eigenpairs of sigma.
    for (Index j = 0; j < ls.size(); ++j) {
        const auto v = es.eigenvectors().col(j);
        const double weight = v.dot(rho * v);
        if (ls(j) > sigma_cut) {
            h -= weight * std::log(ls(j));
        } else if (weight > rho_cut) {
            return std::numeric_limits<double>::infinity();
        }
    }
    return h;
}

std::vector<double> scale_grid(double diam, Index grid_size) {
    if (grid_size < 1) throw InvalidArgument("grid_size must be positive");
    std::vector<double> grid(static_cast<std::size_t>(grid_size));
    for (Index g = 0; g < grid_size; ++g) {
        grid[g] = diam * static_cast<double>(g + 1) / static_cast<double>(grid_size);
    }
    return grid;
}

EntropyProfile entropy_sweep(const DistanceMatrix& d, const SweepOptions& opts) {
    check_sweep_options(opts);
    check_distances(d);
    EntropyProfile p = empty_profile(d, opts);
    const Index m = static_cast<Index>(p.r_grid.size());

    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(m));
    // Large scales cost the most, so hand them out first.
#pragma omp parallel for schedule(dynamic, 1)
    for (Index k = 0; k < m; ++k) {
        const auto g = static_cast<std::size_t>(m - 1 - k);
        try {
            const WeightedGraph graph = graph_at(d, p.r_grid[g]);
            const ComponentLabeling comps = connected_components(graph);
            record(p, g, laplacian_eigenvalues(graph, comps), comps.count, opts);
        } catch (...) {
            errors[g] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return p;
}

EntropyProfile entropy_sweep_serial(const DistanceMatrix& d, const SweepOptions& opts) {
    check_sweep_options(opts);
    check_distances(d);
    EntropyProfile p = empty_profile(d, opts);
    for (std::size_t g = 0; g < p.r_grid.size(); ++g) {
        const WeightedGraph graph = graph_at(d, p.r_grid[g]);
        const Spectrum s = eigendecompose(laplacian(graph), /*with_vectors=*/false);
        record(p, g, s.mu, connected_components(graph).count, opts);
    }
    return p;
}

ScaleSelection select_scale(const EntropyProfile& p) {
    if (p.H.empty() || p.H.size() != p.r_grid.size()) throw InvalidArgument("malformed entropy profile");
    ScaleSelection s;
    s.index = 0;
    s.H_max = p.H[0];
    for (std::size_t g = 1; g < p.H.size(); ++g) {
        if (p.H[g] > s.H_max) {
            s.H_max = p.H[g];
            s.index = static_cast<Index>(g);
        }
    }
    s.r_hat = p.r_grid[s.index];
    s.degenerate = s.H_max <= 1e-12;
    return s;
}

}  // namespace vnscale
