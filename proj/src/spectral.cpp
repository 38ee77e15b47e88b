#include "vnscale/spectral.hpp"

#include "vnscale/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace vnscale {

namespace {

constexpr double kClampRel = 1e-10;

void clamp_roundoff_negatives(Eigen::VectorXd& mu) {
    if (mu.size() == 0) return;
    const double bound = kClampRel * std::max(mu.maxCoeff(), 0.0);
    for (double& m : mu) {
        if (m < 0.0 && m >= -bound) m = 0.0;
    }
}

double threshold(const Eigen::VectorXd& mu, double tol) {
    const double top = mu.size() > 0 ? mu.maxCoeff() : 0.0;
    return tol * std::max(top, 1.0);
}

}  // namespace

LaplacianMatrix laplacian(const WeightedGraph& g) {
    LaplacianMatrix out{Eigen::MatrixXd::Zero(g.n, g.n)};
    auto& L = out.L;
    for (const auto& e : g.edges) {
        L(e.i, e.j) -= e.w;
        L(e.j, e.i) -= e.w;
        L(e.i, e.i) += e.w;
        L(e.j, e.j) += e.w;
    }
    return out;
}

Spectrum eigendecompose(const LaplacianMatrix& L, bool with_vectors) {
    if (!L.L.allFinite()) throw InvalidArgument("Laplacian has non-finite entries");
    if (L.L.rows() != L.L.cols()) throw InvalidArgument("Laplacian must be square");

    Spectrum s;
    if (L.L.rows() == 0) return s;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        L.L, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw Error("symmetric eigensolver did not converge");
    s.mu = es.eigenvalues();
    if (with_vectors) s.U = es.eigenvectors();
    clamp_roundoff_negatives(s.mu);
    return s;
}

Eigen::VectorXd laplacian_eigenvalues(const WeightedGraph& g, const ComponentLabeling& comps) {
    const Index n = g.n;
    std::vector<std::vector<Index>> members(static_cast<std::size_t>(comps.count));
    std::vector<Index> local(static_cast<std::size_t>(n));
    for (Index v = 0; v < n; ++v) {
        auto& m = members[comps.labels[v]];
        local[v] = static_cast<Index>(m.size());
        m.push_back(v);
    }

    std::vector<Eigen::MatrixXd> blocks(members.size());
    for (std::size_t c = 0; c < members.size(); ++c) {
        const Index m = static_cast<Index>(members[c].size());
        blocks[c] = Eigen::MatrixXd::Zero(m, m);
    }
    for (const auto& e : g.edges) {
        auto& B = blocks[comps.labels[e.i]];
        const Index a = local[e.i], b = local[e.j];
        B(a, b) -= e.w;
        B(b, a) -= e.w;
        B(a, a) += e.w;
        B(b, b) += e.w;
    }

    Eigen::VectorXd mu(n);
    Index pos = 0;
    for (auto& B : blocks) {
        const Index m = B.rows();
        if (m == 1) {
            mu(pos++) = 0.0;
            continue;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw Error("symmetric eigensolver did not converge");
        mu.segment(pos, m) = es.eigenvalues();
        pos += m;
    }
    std::sort(mu.begin(), mu.end());
    clamp_roundoff_negatives(mu);
    return mu;
}

double logsumexp(std::span<const double> x) {
    if (x.empty()) return -std::numeric_limits<double>::infinity();
    const double top = *std::max_element(x.begin(), x.end());
    if (!std::isfinite(top)) return top;
    double acc = 0.0;
    for (double v : x) acc += std::exp(v - top);
    return top + std::log(acc);
}

Eigen::VectorXd heat_density_log_eigenvalues(const Eigen::VectorXd& mu, double t) {
    if (!(t > 0.0)) throw InvalidArgument("heat time t must be positive");
    const Eigen::VectorXd a = -t * mu;
    const double log_z = logsumexp({a.data(), static_cast<std::size_t>(a.size())});
    return a.array() - log_z;
}

Index kernel_dimension(const Eigen::VectorXd& mu, double tol) {
    const double cut = threshold(mu, tol);
    return static_cast<Index>(std::count_if(mu.begin(), mu.end(), [&](double m) { return m < cut; }));
}

Eigen::MatrixXd kernel_basis(const Spectrum& s, double tol) {
    if (!(tol > 0.0)) throw InvalidArgument("kernel tolerance must be positive");
    if (!s.has_vectors()) throw InvalidArgument("kernel_basis needs eigenvectors");
    const Index k = kernel_dimension(s.mu, tol);
    return s.U.leftCols(k).transpose();
}

double smallest_positive_eigenvalue(const Eigen::VectorXd& mu, double tol) {
    const double cut = threshold(mu, tol);
    for (double m : mu) {
        if (m >= cut) return m;
    }
    return 0.0;
}

}  // namespace vnscale
