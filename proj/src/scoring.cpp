#include "vnscale/clustering.hpp"

#include "vnscale/error.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace vnscale {

namespace {

constexpr std::size_t kExhaustiveLimit = 8;

using Weights = std::vector<std::vector<Index>>;

Weights transpose(const Weights& w) {
    const std::size_t rows = w.size(), cols = rows ? w[0].size() : 0;
    Weights t(cols, std::vector<Index>(rows));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) t[j][i] = w[i][j];
    }
    return t;
}

// rows <= cols: every row is matched to a distinct column; depth-first over
// all injections.
void exhaustive_from(const Weights& w, std::size_t row, std::vector<bool>& used, Index acc, Index& best) {
    if (row == w.size()) {
        best = std::max(best, acc);
        return;
    }
    for (std::size_t j = 0; j < w[row].size(); ++j) {
        if (used[j]) continue;
        used[j] = true;
        exhaustive_from(w, row + 1, used, acc + w[row][j], best);
        used[j] = false;
    }
}

Index exhaustive(const Weights& w) {
    std::vector<bool> used(w[0].size(), false);
    Index best = 0;
    exhaustive_from(w, 0, used, 0, best);
    return best;
}

}  // namespace

Index max_matching_weight_hungarian(const Weights& in) {
    if (in.empty() || in[0].empty()) return 0;
    const Weights w = in.size() <= in[0].size() ? in : transpose(in);
    const std::size_t rows = w.size(), cols = w[0].size();

    Index top = 0;
    for (const auto& row : w) top = std::max(top, *std::max_element(row.begin(), row.end()));

    // Minimum-cost assignment on cost = top - weight, potentials form (1-based).
    constexpr Index inf = std::numeric_limits<Index>::max() / 4;
    std::vector<Index> u(rows + 1, 0), v(cols + 1, 0);
    std::vector<std::size_t> match(cols + 1, 0), way(cols + 1, 0);
    for (std::size_t i = 1; i <= rows; ++i) {
        match[0] = i;
        std::size_t j0 = 0;
        std::vector<Index> minv(cols + 1, inf);
        std::vector<bool> used(cols + 1, false);
        do {
            used[j0] = true;
            const std::size_t i0 = match[j0];
            Index delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= cols; ++j) {
                if (used[j]) continue;
                const Index cur = (top - w[i0 - 1][j - 1]) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= cols; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    Index total = 0;
    for (std::size_t j = 1; j <= cols; ++j) {
        if (match[j] != 0) total += w[match[j] - 1][j - 1];
    }
    return total;
}

Index max_matching_weight(const Weights& in) {
    if (in.empty() || in[0].empty()) return 0;
    const Weights w = in.size() <= in[0].size() ? in : transpose(in);
    if (w.size() <= kExhaustiveLimit && w[0].size() <= 10) return exhaustive(w);
    return max_matching_weight_hungarian(w);
}

ConfusionMatrix score(std::span<const int> pred, std::span<const int> truth) {
    if (pred.size() != truth.size()) {
        throw InvalidArgument("prediction has " + std::to_string(pred.size()) + " labels, truth has " +
                              std::to_string(truth.size()));
    }
    auto count_of = [](std::span<const int> labels) {
        int top = -1;
        for (int l : labels) {
            if (l < 0) throw InvalidArgument("labels must be non-negative");
            top = std::max(top, l);
        }
        return static_cast<std::size_t>(top + 1);
    };
    const std::size_t k_true = count_of(truth), k_pred = count_of(pred);

    ConfusionMatrix m;
    m.n = static_cast<Index>(pred.size());
    m.counts.assign(k_true, std::vector<Index>(k_pred, 0));
    for (std::size_t i = 0; i < pred.size(); ++i) ++m.counts[truth[i]][pred[i]];
    m.mistakes = m.n - max_matching_weight(m.counts);
    return m;
}

}  // namespace vnscale
