#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace vnscale {

using Index = Eigen::Index;

/// A finite sample in R^d, one point per row, with optional ground-truth labels.
struct PointCloud {
    Eigen::MatrixXd points;
    std::optional<std::vector<int>> labels;
    std::optional<std::uint64_t> seed;

    Index size() const noexcept { return points.rows(); }
    Index dim() const noexcept { return points.cols(); }

    /// Throws InvalidArgument unless n >= 1, d >= 1, coordinates are finite and
    /// labels (if any) have length n.
    void validate() const;
};

/// Symmetric matrix of Euclidean distances together with its maximum entry.
struct DistanceMatrix {
    Eigen::MatrixXd d;
    double diam = 0.0;

    Index size() const noexcept { return d.rows(); }
    double operator()(Index i, Index j) const { return d(i, j); }
};

/// All pairwise Euclidean distances. Rows are split across OpenMP threads.
DistanceMatrix pairwise_distances(const PointCloud& cloud);

/// Single-threaded reference for pairwise_distances.
DistanceMatrix pairwise_distances_serial(const PointCloud& cloud);

/// Index pairs (i < j) of points with identical coordinates, found by hashing
/// rows. Cheap for high-dimensional data where a full distance pass is not.
std::vector<std::pair<Index, Index>> find_duplicate_points(const PointCloud& cloud);

/// Three interlinked circles in R^3: radius 1 about the origin in the xy-plane,
/// radius 0.5 about (0,-1,0) and radius 0.4 about (0,1,0), the small ones lying in
/// the yz-plane. Points are split as evenly as possible with the remainder going
/// to the large circle; labels are the circle index.
PointCloud gen_interlinked_circles(Index n, double noise_sd, std::uint64_t seed);

enum class ShapeKind { trefoil, torus_knot, corona, swiss_roll };

/// Parses "trefoil", "torus_knot", "corona" or "swiss_roll".
ShapeKind parse_shape_kind(std::string_view name);
std::string_view shape_name(ShapeKind kind);

/// Samples a named test shape in R^3 with uniform i.i.d. parameters.
///
///   trefoil     (sin t + 2 sin 2t, cos t - 2 cos 2t, -sin 3t),  t in [0, 2pi)
///   torus_knot  (3,2) knot on the torus R = 2, r = 1
///   corona      unit circle with vertical ripple z = 0.3 sin(6 theta)
///   swiss_roll  (t cos t, y, t sin t),  t in [1.5pi, 4.5pi], y in [0, 10]
PointCloud gen_shape(ShapeKind kind, Index n, double noise_sd, std::uint64_t seed);

/// Adds independent N(0, sd^2) noise to every coordinate. sd == 0 returns the
/// input unchanged.
PointCloud add_gaussian_noise(const PointCloud& cloud, double sd, std::uint64_t seed);

}  // namespace vnscale
