#pragma once

#include "vnscale/graph.hpp"

#include <Eigen/Dense>

#include <span>

namespace vnscale {

/// Weighted graph Laplacian: -w on edges, weighted degree on the diagonal.
struct LaplacianMatrix {
    Eigen::MatrixXd L;
};

/// Ascending eigenvalues; U holds orthonormal eigenvector columns and is empty
/// when only eigenvalues were requested.
struct Spectrum {
    Eigen::VectorXd mu;
    Eigen::MatrixXd U;

    Index size() const noexcept { return mu.size(); }
    bool has_vectors() const noexcept { return U.size() > 0; }
};

/// Relative tolerance separating numerical zeros from the rest of a spectrum.
inline constexpr double kDefaultKernelTol = 1e-8;

LaplacianMatrix laplacian(const WeightedGraph& g);

/// Full symmetric eigendecomposition. Tiny negative eigenvalues within
/// 1e-10 * mu_max of zero are clamped to zero. Throws InvalidArgument on
/// non-finite entries.
Spectrum eigendecompose(const LaplacianMatrix& L, bool with_vectors = true);

/// Eigenvalues of the Laplacian of g, computed one connected component at a
/// time (the Laplacian is block diagonal under the component ordering) and
/// merged into one ascending vector.
Eigen::VectorXd laplacian_eigenvalues(const WeightedGraph& g, const ComponentLabeling& comps);

/// Numerically stable log(sum(exp(x))).
double logsumexp(std::span<const double> x);

/// log p_i for the eigenvalues p_i = exp(-t mu_i) / sum_j exp(-t mu_j) of the
/// trace-normalized heat operator.
Eigen::VectorXd heat_density_log_eigenvalues(const Eigen::VectorXd& mu, double t);

/// Number of eigenvalues below tol * max(mu_max, 1).
Index kernel_dimension(const Eigen::VectorXd& mu, double tol = kDefaultKernelTol);

/// Kernel eigenvectors as rows (k x n). Needs a spectrum with vectors.
Eigen::MatrixXd kernel_basis(const Spectrum& s, double tol = kDefaultKernelTol);

/// Smallest eigenvalue above the kernel threshold, or 0 if there is none.
double smallest_positive_eigenvalue(const Eigen::VectorXd& mu, double tol = kDefaultKernelTol);

}  // namespace vnscale
