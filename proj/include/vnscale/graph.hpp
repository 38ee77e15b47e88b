#pragma once

#include "vnscale/geometry.hpp"

#include <span>
#include <utility>
#include <vector>

namespace vnscale {

struct Edge {
    Index i;  // i < j
    Index j;
    double w;
};

/// The neighborhood graph G_r: an edge joins i and j whenever 0 < d(i,j) <= r,
/// weighted by d(i,j). Edges are stored once, upper triangle, in (i, j) order.
struct WeightedGraph {
    Index n = 0;
    std::vector<Edge> edges;
    double scale = 0.0;
};

struct ComponentLabeling {
    std::vector<Index> labels;  // ids 0..count-1, numbered by first vertex
    Index count = 0;
};

/// Disjoint-set forest with path halving and union by size.
class UnionFind {
public:
    explicit UnionFind(Index n);

    Index find(Index x);
    bool unite(Index a, Index b);
    Index sets() const noexcept { return sets_; }

    /// Contiguous labels, numbered in order of first appearance.
    ComponentLabeling labeling();

private:
    std::vector<Index> parent_;
    std::vector<Index> size_;
    Index sets_;
};

/// Throws DuplicatePoints if any off-diagonal distance is zero.
void check_no_duplicates(const DistanceMatrix& d);

/// Builds G_r. Throws InvalidArgument for r <= 0 and DuplicatePoints for
/// coincident points.
WeightedGraph build_graph(const DistanceMatrix& d, double r);

ComponentLabeling connected_components(const WeightedGraph& g);

/// Component count of G_r at each r in an ascending grid. Edges are merged
/// incrementally in order of length, so the whole profile costs one sort.
std::vector<std::pair<double, Index>> component_profile(const DistanceMatrix& d,
                                                        std::span<const double> grid);

}  // namespace vnscale
