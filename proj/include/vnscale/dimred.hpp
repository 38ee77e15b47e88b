#pragma once

#include "vnscale/entropy.hpp"

namespace vnscale {

struct Embedding {
    Eigen::MatrixXd coords;         // n x k, row m is the image of point m
    double r_hat = 0.0;
    Eigen::VectorXd eigvals_used;   // ascending, all above the kernel threshold
    Index kernel_dim = 0;
    EntropyProfile profile;
};

/// Spectral embedding at the entropy-selected scale. The whole numerical kernel
/// is discarded and the eigenvectors of the next k eigenvalues become the
/// coordinates. Throws KTooLarge if fewer than k remain.
Embedding reduce(const PointCloud& cloud, Index k, const SweepOptions& opts = {});

/// Embedding of G_r for a given scale (no sweep).
Embedding embed_at_scale(const DistanceMatrix& d, double r, Index k,
                         double kernel_tol = kDefaultKernelTol);

/// Flips each column so its first entry with |x| > 1e-8 is positive.
void apply_sign_convention(Eigen::MatrixXd& columns);

/// Mean Jaccard overlap of the k-nearest-neighbour sets of each point, computed
/// in two coordinate systems for the same points.
double neighbor_overlap(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, Index k = 10);

}  // namespace vnscale
