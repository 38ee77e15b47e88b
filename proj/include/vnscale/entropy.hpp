#pragma once

#include "vnscale/spectral.hpp"

#include <vector>

namespace vnscale {

/// Relative von Neumann entropy H(rho || sigma) between the trace-normalized
/// heat operators exp(-t1 L) and exp(-t2 L), from the eigenvalues of L alone.
/// Both operators share an eigenbasis, so H reduces to
///
///   sum_i p_i (t2 - t1) mu_i - log Z(t1) + log Z(t2),
///
/// with p_i = exp(-t1 mu_i) / Z(t1) and log Z evaluated by logsumexp. Nothing is
/// exponentiated outside the log domain, so large t2 is safe.
double relative_vn_entropy_spectral(const Eigen::VectorXd& mu, double t1, double t2);

/// General-case H(rho || sigma) = Tr(rho log rho - rho log sigma) for a density
/// matrix rho and a positive semidefinite sigma, each diagonalized on its own.
/// Returns +infinity when supp rho is not contained in supp sigma. Throws
/// InvalidArgument on non-symmetric input or Tr(rho) outside 1 +- 1e-6.
double relative_vn_entropy_dense(const Eigen::MatrixXd& rho, const Eigen::MatrixXd& sigma);

struct SweepOptions {
    Index grid_size = 200;
    double t_star = 1000.0;
    double kernel_tol = kDefaultKernelTol;
};

/// H(rho_r || sigma_r) over the scale grid, plus per-scale diagnostics.
struct EntropyProfile {
    std::vector<double> r_grid;
    std::vector<double> H;
    double t_star = 1000.0;
    std::vector<Index> components;       // union-find count of G_r
    std::vector<Index> kernel_dim;       // numerical kernel dimension of L_r
    std::vector<double> min_positive_mu;  // smallest eigenvalue above the kernel threshold

    Index size() const noexcept { return static_cast<Index>(H.size()); }
};

struct ScaleSelection {
    double r_hat = 0.0;
    Index index = 0;
    double H_max = 0.0;
    bool degenerate = false;  // profile identically zero
};

/// (diam / grid_size) * {1, ..., grid_size}.
std::vector<double> scale_grid(double diam, Index grid_size);

/// Evaluates the profile over scale_grid(d.diam, grid_size), with t1 = 1 and
/// t2 = t_star. Grid points are distributed over OpenMP threads; results are
/// stored by grid index, so the output does not depend on scheduling.
EntropyProfile entropy_sweep(const DistanceMatrix& d, const SweepOptions& opts = {});

/// Serial reference: one dense eigensolve of the full Laplacian per grid point.
EntropyProfile entropy_sweep_serial(const DistanceMatrix& d, const SweepOptions& opts = {});

/// Smallest-index argmax of H.
ScaleSelection select_scale(const EntropyProfile& p);

}  // namespace vnscale
