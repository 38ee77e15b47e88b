#include "vnscale/geometry.hpp"

#include "vnscale/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <random>
#include <string>
#include <unordered_map>

namespace vnscale {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Seeds for the parameter draw and the noise draw are split so that changing the
// noise level never changes the clean sample.
std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    return std::mt19937_64(seq);
}

}  // namespace

DuplicatePoints::DuplicatePoints(std::vector<std::pair<long, long>> pairs)
    : Error([&] {
          std::string msg = "duplicate points:";
          const std::size_t shown = std::min<std::size_t>(pairs.size(), 10);
          for (std::size_t i = 0; i < shown; ++i) {
              msg += " (" + std::to_string(pairs[i].first) + "," + std::to_string(pairs[i].second) + ")";
          }
          if (pairs.size() > shown) msg += " ...";
          return msg;
      }()),
      pairs_(std::move(pairs)) {}

KTooLarge::KTooLarge(long requested, long available)
    : Error("requested embedding dimension " + std::to_string(requested) + " but only " +
            std::to_string(available) + " non-kernel eigenvectors are available"),
      requested_(requested),
      available_(available) {}

void PointCloud::validate() const {
    if (points.rows() < 1 || points.cols() < 1) {
        throw InvalidArgument("point cloud must have at least one point and one coordinate");
    }
    if (!points.allFinite()) throw InvalidArgument("point cloud has non-finite coordinates");
    if (labels && static_cast<Index>(labels->size()) != points.rows()) {
        throw InvalidArgument("label count " + std::to_string(labels->size()) +
                              " does not match point count " + std::to_string(points.rows()));
    }
}

DistanceMatrix pairwise_distances(const PointCloud& cloud) {
    cloud.validate();
    const Index n = cloud.size();
    const auto& X = cloud.points;
    DistanceMatrix out{Eigen::MatrixXd::Zero(n, n), 0.0};
    double diam = 0.0;

#pragma omp parallel for schedule(dynamic, 16) reduction(max : diam)
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const double dij = (X.row(i) - X.row(j)).norm();
            out.d(i, j) = dij;
            out.d(j, i) = dij;
            diam = std::max(diam, dij);
        }
    }
    out.diam = diam;
    return out;
}

DistanceMatrix pairwise_distances_serial(const PointCloud& cloud) {
    cloud.validate();
    const Index n = cloud.size();
    const auto& X = cloud.points;
    DistanceMatrix out{Eigen::MatrixXd::Zero(n, n), 0.0};
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const double dij = (X.row(i) - X.row(j)).norm();
            out.d(i, j) = dij;
            out.d(j, i) = dij;
            out.diam = std::max(out.diam, dij);
        }
    }
    return out;
}

std::vector<std::pair<Index, Index>> find_duplicate_points(const PointCloud& cloud) {
    const Index n = cloud.size();
    const Index d = cloud.dim();
    // Row-major copy so each point's coordinates are contiguous bytes.
    const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows = cloud.points;
    auto row_bytes = [&](Index i) {
        return std::string_view(reinterpret_cast<const char*>(rows.data() + i * d),
                                static_cast<std::size_t>(d) * sizeof(double));
    };
    auto same = [&](Index a, Index b) { return (rows.row(a).array() == rows.row(b).array()).all(); };

    std::unordered_map<std::size_t, std::vector<Index>> buckets;
    std::vector<std::pair<Index, Index>> dups;
    for (Index i = 0; i < n; ++i) {
        auto& bucket = buckets[std::hash<std::string_view>{}(row_bytes(i))];
        for (Index j : bucket) {
            if (same(j, i)) dups.emplace_back(j, i);
        }
        bucket.push_back(i);
    }
    std::sort(dups.begin(), dups.end());
    return dups;
}

PointCloud gen_interlinked_circles(Index n, double noise_sd, std::uint64_t seed) {
    if (n < 3) throw InvalidArgument("interlinked circles need n >= 3");
    if (!(noise_sd >= 0.0)) throw InvalidArgument("noise_sd must be non-negative");

    const Index base = n / 3;
    const Index counts[3] = {base + n % 3, base, base};

    auto rng = make_engine(seed, 0);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);

    PointCloud cloud;
    cloud.points.resize(n, 3);
    cloud.labels.emplace();
    cloud.labels->reserve(static_cast<std::size_t>(n));
    cloud.seed = seed;

    Index row = 0;
    for (int c = 0; c < 3; ++c) {
        for (Index m = 0; m < counts[c]; ++m, ++row) {
            const double th = angle(rng);
            const double cs = std::cos(th), sn = std::sin(th);
            switch (c) {
                case 0: cloud.points.row(row) << cs, sn, 0.0; break;
                case 1: cloud.points.row(row) << 0.0, -1.0 + 0.5 * cs, 0.5 * sn; break;
                default: cloud.points.row(row) << 0.0, 1.0 + 0.4 * cs, 0.4 * sn; break;
            }
            cloud.labels->push_back(c);
        }
    }
    return add_gaussian_noise(cloud, noise_sd, seed);
}

ShapeKind parse_shape_kind(std::string_view name) {
    if (name == "trefoil") return ShapeKind::trefoil;
    if (name == "torus_knot") return ShapeKind::torus_knot;
    if (name == "corona") return ShapeKind::corona;
    if (name == "swiss_roll") return ShapeKind::swiss_roll;
    throw InvalidArgument("unknown shape kind '" + std::string(name) + "'");
}

std::string_view shape_name(ShapeKind kind) {
    switch (kind) {
        case ShapeKind::trefoil: return "trefoil";
        case ShapeKind::torus_knot: return "torus_knot";
        case ShapeKind::corona: return "corona";
        case ShapeKind::swiss_roll: return "swiss_roll";
    }
    return "unknown";
}

PointCloud gen_shape(ShapeKind kind, Index n, double noise_sd, std::uint64_t seed) {
    if (n < 1) throw InvalidArgument("shape needs n >= 1");
    if (!(noise_sd >= 0.0)) throw InvalidArgument("noise_sd must be non-negative");

    auto rng = make_engine(seed, 0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    PointCloud cloud;
    cloud.points.resize(n, 3);
    cloud.seed = seed;

    for (Index m = 0; m < n; ++m) {
        const double t = kTwoPi * unit(rng);
        switch (kind) {
            case ShapeKind::trefoil:
                cloud.points.row(m) << std::sin(t) + 2.0 * std::sin(2.0 * t),
                    std::cos(t) - 2.0 * std::cos(2.0 * t), -std::sin(3.0 * t);
                break;
            case ShapeKind::torus_knot: {
                constexpr double R = 2.0, r = 1.0, p = 3.0, q = 2.0;
                const double rho = R + r * std::cos(q * t);
                cloud.points.row(m) << rho * std::cos(p * t), rho * std::sin(p * t), r * std::sin(q * t);
                break;
            }
            case ShapeKind::corona:
                cloud.points.row(m) << std::cos(t), std::sin(t), 0.3 * std::sin(6.0 * t);
                break;
            case ShapeKind::swiss_roll: {
                const double s = std::numbers::pi * (1.5 + 3.0 * unit(rng));
                const double y = 10.0 * unit(rng);
                cloud.points.row(m) << s * std::cos(s), y, s * std::sin(s);
                break;
            }
        }
    }
    return add_gaussian_noise(cloud, noise_sd, seed);
}

PointCloud add_gaussian_noise(const PointCloud& cloud, double sd, std::uint64_t seed) {
    if (!(sd >= 0.0)) throw InvalidArgument("noise standard deviation must be non-negative");
    PointCloud out = cloud;
    if (sd == 0.0) return out;

    auto rng = make_engine(seed, 1);
    std::normal_distribution<double> normal(0.0, 1.0);
    // Fill row by row so the draw order is independent of storage order.
    for (Index i = 0; i < out.points.rows(); ++i) {
        for (Index j = 0; j < out.points.cols(); ++j) out.points(i, j) += sd * normal(rng);
    }
    return out;
}

}  // namespace vnscale
