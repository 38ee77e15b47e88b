#include "vnscale/graph.hpp"

#include "vnscale/error.hpp"

#include <algorithm>
#include <numeric>

namespace vnscale {

UnionFind::UnionFind(Index n)
    : parent_(static_cast<std::size_t>(n)), size_(static_cast<std::size_t>(n), 1), sets_(n) {
    std::iota(parent_.begin(), parent_.end(), Index{0});
}

Index UnionFind::find(Index x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

bool UnionFind::unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --sets_;
    return true;
}

ComponentLabeling UnionFind::labeling() {
    const Index n = static_cast<Index>(parent_.size());
    ComponentLabeling out;
    out.labels.assign(static_cast<std::size_t>(n), -1);
    std::vector<Index> id_of_root(static_cast<std::size_t>(n), -1);
    for (Index v = 0; v < n; ++v) {
        const Index root = find(v);
        if (id_of_root[root] < 0) id_of_root[root] = out.count++;
        out.labels[v] = id_of_root[root];
    }
    return out;
}

void check_no_duplicates(const DistanceMatrix& d) {
    std::vector<std::pair<long, long>> dups;
    const Index n = d.size();
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            if (d(i, j) == 0.0 && dups.size() < 500) dups.emplace_back(i, j);
        }
    }
    if (!dups.empty()) throw DuplicatePoints(std::move(dups));
}

WeightedGraph build_graph(const DistanceMatrix& d, double r) {
    if (!(r > 0.0)) throw InvalidArgument("scale r must be positive");
    check_no_duplicates(d);

    WeightedGraph g;
    g.n = d.size();
    g.scale = r;
    for (Index i = 0; i < g.n; ++i) {
        for (Index j = i + 1; j < g.n; ++j) {
            const double w = d(i, j);
            if (w <= r) g.edges.push_back({i, j, w});
        }
    }
    return g;
}

ComponentLabeling connected_components(const WeightedGraph& g) {
    UnionFind uf(g.n);
    for (const auto& e : g.edges) uf.unite(e.i, e.j);
    return uf.labeling();
}

std::vector<std::pair<double, Index>> component_profile(const DistanceMatrix& d,
                                                        std::span<const double> grid) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0)) throw InvalidArgument("scale grid must be positive");
        if (i > 0 && grid[i] < grid[i - 1]) throw InvalidArgument("scale grid must be ascending");
    }
    check_no_duplicates(d);

    const Index n = d.size();
    std::vector<Edge> pairs;
    pairs.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) pairs.push_back({i, j, d(i, j)});
    }
    std::sort(pairs.begin(), pairs.end(), [](const Edge& a, const Edge& b) { return a.w < b.w; });

    UnionFind uf(n);
    std::vector<std::pair<double, Index>> out;
    out.reserve(grid.size());
    std::size_t next = 0;
    for (double r : grid) {
        while (next < pairs.size() && pairs[next].w <= r) {
            uf.unite(pairs[next].i, pairs[next].j);
            ++next;
        }
        out.emplace_back(r, uf.sets());
    }
    return out;
}

}  // namespace vnscale
