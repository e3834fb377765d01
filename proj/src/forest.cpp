#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "classify_internal.hpp"
#include "qiraa/classify.hpp"
#include "qiraa/rng.hpp"

namespace qiraa {

namespace {

struct TreeBuilder {
    const std::vector<SparseVector>& X;
    const std::vector<int>& cls; // per row: position in the class list
    uint64_t dim;
    int mtry;
    int max_depth; // 0 = unlimited
    SplitMix64 rng;
    Tree tree;

    std::array<int64_t, kNumLabels> count_classes(const std::vector<uint32_t>& rows,
                                                  const std::vector<Label>& classes) const {
        std::array<int64_t, kNumLabels> counts{};
        for (uint32_t r : rows) counts[label_index(classes[cls[r]])] += 1;
        return counts;
    }

    static double weighted_gini(const std::array<int64_t, kNumLabels>& left,
                                const std::array<int64_t, kNumLabels>& right) {
        auto side = [](const std::array<int64_t, kNumLabels>& c) {
            int64_t n = 0;
            for (int64_t x : c) n += x;
            if (n == 0) return 0.0;
            double sumsq = 0.0;
            for (int64_t x : c) {
                const double p = static_cast<double>(x) / static_cast<double>(n);
                sumsq += p * p;
            }
            return static_cast<double>(n) * (1.0 - sumsq);
        };
        return side(left) + side(right);
    }

    std::vector<uint32_t> draw_candidates() {
        const uint64_t want = std::min<uint64_t>(static_cast<uint64_t>(mtry), dim);
        std::vector<uint32_t> cand;
        if (want == dim) {
            cand.resize(dim);
            for (uint32_t f = 0; f < dim; ++f) cand[f] = f;
            return cand;
        }
        std::unordered_set<uint32_t> seen;
        while (cand.size() < want) {
            const uint32_t f = static_cast<uint32_t>(rng.below(dim));
            if (seen.insert(f).second) cand.push_back(f); // draw order, deterministic
        }
        return cand;
    }

    int build(std::vector<uint32_t>& rows, int depth,
              const std::vector<Label>& classes) {
        const int node_id = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        tree.nodes[node_id].counts = count_classes(rows, classes);

        int nonzero_classes = 0;
        for (int64_t c : tree.nodes[node_id].counts)
            if (c > 0) ++nonzero_classes;
        const bool depth_capped = max_depth > 0 && depth >= max_depth;
        if (nonzero_classes <= 1 || rows.size() < 2 || depth_capped)
            return node_id; // leaf

        // best split over mtry random candidate features
        double best_score = 0.0;
        {
            std::array<int64_t, kNumLabels> zero{};
            best_score = weighted_gini(tree.nodes[node_id].counts, zero);
        }
        int best_feature = -1;
        double best_threshold = 0.0;

        const std::vector<uint32_t> candidates = draw_candidates();
        std::vector<std::pair<double, int>> values; // (feature value, class pos)
        for (uint32_t f : candidates) {
            values.clear();
            for (uint32_t r : rows) values.emplace_back(X[r].at(f), cls[r]);
            std::sort(values.begin(), values.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            if (values.front().first == values.back().first) continue; // constant

            // sweep tallies key on class position; gini only sees the counts
            std::array<int64_t, kNumLabels> left{};
            std::array<int64_t, kNumLabels> right{};
            for (const auto& [_, c] : values) right[c] += 1;
            for (size_t i = 0; i + 1 < values.size(); ++i) {
                left[values[i].second] += 1;
                right[values[i].second] -= 1;
                if (values[i].first == values[i + 1].first) continue; // not a cut
                const double score = weighted_gini(left, right);
                if (score < best_score - 1e-12) {
                    best_score = score;
                    best_feature = static_cast<int>(f);
                    best_threshold = 0.5 * (values[i].first + values[i + 1].first);
                }
            }
        }
        if (best_feature < 0) return node_id; // no improving split found

        std::vector<uint32_t> left_rows, right_rows;
        for (uint32_t r : rows)
            (X[r].at(static_cast<uint32_t>(best_feature)) <= best_threshold
                 ? left_rows
                 : right_rows)
                .push_back(r);
        rows.clear();
        rows.shrink_to_fit();

        tree.nodes[node_id].feature = best_feature;
        tree.nodes[node_id].threshold = best_threshold;
        const int left_id = build(left_rows, depth + 1, classes);
        tree.nodes[node_id].left = left_id;
        const int right_id = build(right_rows, depth + 1, classes);
        tree.nodes[node_id].right = right_id;
        return node_id;
    }
};

Tree build_one_tree(const std::vector<SparseVector>& X, const std::vector<int>& cls,
                    const std::vector<Label>& classes, const TrainConfig& config,
                    uint64_t tree_seed) {
    const uint64_t dim = X[0].dim;
    const int mtry =
        config.mtry > 0
            ? config.mtry
            : std::max(1, static_cast<int>(std::sqrt(static_cast<double>(dim))));

    TreeBuilder builder{X, cls, dim, mtry, config.max_depth, SplitMix64(tree_seed), {}};

    // bootstrap sample of the rows
    std::vector<uint32_t> rows(X.size());
    for (size_t i = 0; i < X.size(); ++i)
        rows[i] = static_cast<uint32_t>(builder.rng.below(X.size()));
    std::sort(rows.begin(), rows.end()); // stable node statistics

    builder.build(rows, 0, classes);
    return std::move(builder.tree);
}

ForestParams fit_forest(const std::vector<SparseVector>& X, const std::vector<Label>& y,
                        const TrainConfig& config, std::vector<Label>& classes_out,
                        bool parallel) {
    detail::check_training_input(X, y);
    if (config.n_trees < 1) throw std::invalid_argument("forest needs >= 1 tree");
    classes_out = detail::present_classes(y);

    std::array<int, kNumLabels> class_pos{};
    for (size_t c = 0; c < classes_out.size(); ++c)
        class_pos[label_index(classes_out[c])] = static_cast<int>(c);
    std::vector<int> cls(y.size());
    for (size_t i = 0; i < y.size(); ++i) cls[i] = class_pos[label_index(y[i])];

    ForestParams forest;
    forest.trees.resize(config.n_trees);
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int t = 0; t < config.n_trees; ++t)
            forest.trees[t] = build_one_tree(X, cls, classes_out, config,
                                             derive_seed(config.seed, t));
    } else {
        for (int t = 0; t < config.n_trees; ++t)
            forest.trees[t] = build_one_tree(X, cls, classes_out, config,
                                             derive_seed(config.seed, t));
    }
    return forest;
}

} // namespace

ForestParams train_rf(const std::vector<SparseVector>& X, const std::vector<Label>& y,
                      const TrainConfig& config, std::vector<Label>& classes_out) {
    return fit_forest(X, y, config, classes_out, true);
}

ForestParams train_rf_serial(const std::vector<SparseVector>& X,
                             const std::vector<Label>& y, const TrainConfig& config,
                             std::vector<Label>& classes_out) {
    return fit_forest(X, y, config, classes_out, false);
}

} // namespace qiraa
