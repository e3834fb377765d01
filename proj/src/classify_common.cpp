#include <algorithm>
#include <cmath>
#include <limits>

#include "qiraa/classify.hpp"
#include "qiraa/errors.hpp"

namespace qiraa {

const char* algorithm_key(Algorithm a) {
    switch (a) {
        case Algorithm::MNB: return "mnb";
        case Algorithm::BNB: return "bnb";
        case Algorithm::LogReg: return "logreg";
        case Algorithm::SVM: return "svm";
        case Algorithm::RF: return "rf";
    }
    return "?";
}

const char* algorithm_display(Algorithm a) {
    switch (a) {
        case Algorithm::MNB: return "Multinomial Naive Bayes";
        case Algorithm::BNB: return "Bernoulli Naive Bayes";
        case Algorithm::LogReg: return "Logistic Regression";
        case Algorithm::SVM: return "Support Vector Machine";
        case Algorithm::RF: return "Random Forest";
    }
    return "?";
}

Algorithm parse_algorithm(const std::string& s) {
    for (Algorithm a : {Algorithm::MNB, Algorithm::BNB, Algorithm::LogReg,
                        Algorithm::SVM, Algorithm::RF})
        if (s == algorithm_key(a)) return a;
    throw UsageError("unknown algorithm '" + s + "'");
}

const char* representation_key(Representation r) {
    return r == Representation::Count ? "count" : "tfidf";
}

Representation parse_representation(const std::string& s) {
    if (s == "count") return Representation::Count;
    if (s == "tfidf") return Representation::Tfidf;
    throw UsageError("unknown representation '" + s + "'");
}

int resolve_max_iter(const TrainConfig& config) {
    if (config.max_iter > 0) return config.max_iter;
    return config.algorithm == Algorithm::SVM ? 1500 : 1000;
}

namespace detail {

std::vector<Label> present_classes(const std::vector<Label>& y) {
    std::array<bool, kNumLabels> seen{};
    for (Label l : y) seen[label_index(l)] = true;
    std::vector<Label> classes;
    for (Label l : all_labels())
        if (seen[label_index(l)]) classes.push_back(l);
    return classes;
}

void check_training_input(const std::vector<SparseVector>& X,
                          const std::vector<Label>& y) {
    if (X.empty()) throw std::invalid_argument("empty training set");
    if (X.size() != y.size())
        throw std::invalid_argument("feature/label count mismatch");
    for (const SparseVector& v : X)
        if (v.dim != X[0].dim)
            throw std::invalid_argument("inconsistent feature dimensionality");
}

} // namespace detail

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Shift scores so exp(scores) sums to 1 (log-softmax); tolerates -inf
/// entries, including the all--inf corner reachable with alpha = 0.
void log_normalize(std::vector<double>& scores) {
    double m = kNegInf;
    for (double s : scores) m = std::max(m, s);
    if (m == kNegInf) return;
    double sum = 0.0;
    for (double s : scores) sum += std::exp(s - m);
    const double lse = m + std::log(sum);
    for (double& s : scores) s -= lse;
}

std::vector<double> mnb_scores(const MnbParams& p, const SparseVector& x) {
    std::vector<double> scores(p.log_prior);
    for (size_t c = 0; c < scores.size(); ++c) {
        const std::vector<double>& ll = p.log_likelihood[c];
        double acc = 0.0;
        for (size_t k = 0; k < x.idx.size(); ++k) acc += x.val[k] * ll[x.idx[k]];
        scores[c] += acc;
    }
    log_normalize(scores);
    return scores;
}

std::vector<double> bnb_scores(const BnbParams& p, const SparseVector& x) {
    std::vector<double> scores(p.log_prior);
    for (size_t c = 0; c < scores.size(); ++c) {
        double acc = 0.0;
        for (double la : p.log_absent[c]) acc += la;
        for (size_t k = 0; k < x.idx.size(); ++k) {
            if (x.val[k] <= 0.0) continue; // presence means weight > 0
            const uint32_t t = x.idx[k];
            acc += p.log_present[c][t] - p.log_absent[c][t];
        }
        scores[c] += acc;
    }
    log_normalize(scores);
    return scores;
}

std::vector<double> linear_scores(const LinearParams& p, const SparseVector& x) {
    std::vector<double> margins(p.bias);
    for (size_t c = 0; c < margins.size(); ++c) {
        const std::vector<double>& w = p.weights[c];
        double acc = 0.0;
        for (size_t k = 0; k < x.idx.size(); ++k) acc += x.val[k] * w[x.idx[k]];
        margins[c] += acc;
    }
    if (!p.logistic) return margins; // SVM reports raw decision margins
    // one-vs-rest sigmoids, normalized across heads, reported in log space
    std::vector<double> scores(margins.size());
    double sum = 0.0;
    for (size_t c = 0; c < margins.size(); ++c) {
        const double m = margins[c];
        const double s = m >= 0 ? 1.0 / (1.0 + std::exp(-m))
                                : std::exp(m) / (1.0 + std::exp(m));
        scores[c] = s;
        sum += s;
    }
    for (double& s : scores) s = std::log(s) - std::log(sum);
    return scores;
}

int tree_vote(const Tree& tree, const SparseVector& x) {
    int node = 0;
    while (tree.nodes[node].feature >= 0) {
        const TreeNode& nd = tree.nodes[node];
        node = x.at(static_cast<uint32_t>(nd.feature)) <= nd.threshold ? nd.left
                                                                       : nd.right;
    }
    const auto& counts = tree.nodes[node].counts;
    int best = 0;
    for (int c = 1; c < kNumLabels; ++c)
        if (counts[c] > counts[best]) best = c;
    return best;
}

std::vector<double> forest_scores(const ForestParams& p,
                                  const std::vector<Label>& classes,
                                  const SparseVector& x) {
    std::array<int64_t, kNumLabels> votes{};
    for (const Tree& tree : p.trees) votes[tree_vote(tree, x)] += 1;
    std::vector<double> scores(classes.size());
    for (size_t c = 0; c < classes.size(); ++c)
        scores[c] = static_cast<double>(votes[label_index(classes[c])]) /
                    static_cast<double>(p.trees.size());
    return scores;
}

size_t params_dim(const ClassifierCore& core) {
    if (const auto* m = std::get_if<MnbParams>(&core.params))
        return m->log_likelihood.empty() ? 0 : m->log_likelihood[0].size();
    if (const auto* b = std::get_if<BnbParams>(&core.params))
        return b->log_present.empty() ? 0 : b->log_present[0].size();
    if (const auto* l = std::get_if<LinearParams>(&core.params))
        return l->weights.empty() ? 0 : l->weights[0].size();
    return SIZE_MAX; // forests read features lazily
}

} // namespace

Prediction predict_core(const ClassifierCore& core, const SparseVector& x,
                        uint64_t expected_dim) {
    if (x.dim != expected_dim)
        throw std::invalid_argument("prediction vector dimensionality mismatch: got " +
                                    std::to_string(x.dim) + ", model expects " +
                                    std::to_string(expected_dim));
    const size_t pdim = params_dim(core);
    if (pdim != SIZE_MAX && pdim != expected_dim)
        throw std::invalid_argument("model parameter dimensionality mismatch");

    std::vector<double> class_scores;
    switch (core.algorithm) {
        case Algorithm::MNB:
            class_scores = mnb_scores(std::get<MnbParams>(core.params), x);
            break;
        case Algorithm::BNB:
            class_scores = bnb_scores(std::get<BnbParams>(core.params), x);
            break;
        case Algorithm::LogReg:
        case Algorithm::SVM:
            class_scores = linear_scores(std::get<LinearParams>(core.params), x);
            break;
        case Algorithm::RF:
            class_scores = forest_scores(std::get<ForestParams>(core.params),
                                         core.classes, x);
            break;
    }

    Prediction pred;
    pred.scores.fill(kNegInf);
    for (size_t c = 0; c < core.classes.size(); ++c)
        pred.scores[label_index(core.classes[c])] = class_scores[c];
    // argmax in canonical order; ties keep the lowest label index
    pred.label = core.classes.front();
    for (Label l : core.classes)
        if (pred.scores[label_index(l)] > pred.scores[label_index(pred.label)])
            pred.label = l;
    return pred;
}

ClassifierCore train_classifier(const std::vector<SparseVector>& X,
                                const std::vector<Label>& y,
                                const TrainConfig& config) {
    ClassifierCore core;
    core.algorithm = config.algorithm;
    switch (config.algorithm) {
        case Algorithm::MNB:
            core.params = train_mnb(X, y, config.alpha, core.classes);
            break;
        case Algorithm::BNB:
            core.params = train_bnb(X, y, config.alpha, core.classes);
            break;
        case Algorithm::LogReg:
            core.params = train_logreg(X, y, config, core.classes);
            break;
        case Algorithm::SVM:
            core.params = train_svm(X, y, config, core.classes);
            break;
        case Algorithm::RF:
            core.params = train_rf(X, y, config, core.classes);
            break;
    }
    return core;
}

} // namespace qiraa
