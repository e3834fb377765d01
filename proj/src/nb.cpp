#include <cmath>

#include "classify_internal.hpp"
#include "qiraa/classify.hpp"

namespace qiraa {

MnbParams train_mnb(const std::vector<SparseVector>& X, const std::vector<Label>& y,
                    double alpha, std::vector<Label>& classes_out) {
    detail::check_training_input(X, y);
    if (alpha < 0.0) throw std::invalid_argument("smoothing alpha must be >= 0");

    classes_out = detail::present_classes(y);
    const size_t k = classes_out.size();
    const size_t v = X[0].dim;

    std::array<int, kNumLabels> class_pos{};
    for (size_t c = 0; c < k; ++c) class_pos[label_index(classes_out[c])] = static_cast<int>(c);

    std::vector<std::vector<double>> counts(k, std::vector<double>(v, 0.0));
    std::vector<double> totals(k, 0.0);
    std::vector<double> n_docs(k, 0.0);
    for (size_t i = 0; i < X.size(); ++i) {
        const int c = class_pos[label_index(y[i])];
        n_docs[c] += 1.0;
        for (size_t j = 0; j < X[i].idx.size(); ++j) {
            counts[c][X[i].idx[j]] += X[i].val[j];
            totals[c] += X[i].val[j];
        }
    }

    MnbParams params;
    params.alpha = alpha;
    params.log_prior.resize(k);
    params.log_likelihood.assign(k, std::vector<double>(v));
    const double n = static_cast<double>(X.size());
    for (size_t c = 0; c < k; ++c) {
        params.log_prior[c] = std::log(n_docs[c] / n);
        const double denom = totals[c] + alpha * static_cast<double>(v);
        for (size_t t = 0; t < v; ++t)
            params.log_likelihood[c][t] = std::log((counts[c][t] + alpha) / denom);
    }
    return params;
}

BnbParams train_bnb(const std::vector<SparseVector>& X, const std::vector<Label>& y,
                    double alpha, std::vector<Label>& classes_out) {
    detail::check_training_input(X, y);
    if (alpha < 0.0) throw std::invalid_argument("smoothing alpha must be >= 0");

    classes_out = detail::present_classes(y);
    const size_t k = classes_out.size();
    const size_t v = X[0].dim;

    std::array<int, kNumLabels> class_pos{};
    for (size_t c = 0; c < k; ++c) class_pos[label_index(classes_out[c])] = static_cast<int>(c);

    std::vector<std::vector<double>> present(k, std::vector<double>(v, 0.0));
    std::vector<double> n_docs(k, 0.0);
    for (size_t i = 0; i < X.size(); ++i) {
        const int c = class_pos[label_index(y[i])];
        n_docs[c] += 1.0;
        for (size_t j = 0; j < X[i].idx.size(); ++j)
            if (X[i].val[j] > 0.0) present[c][X[i].idx[j]] += 1.0; // binarized
    }

    BnbParams params;
    params.alpha = alpha;
    params.log_prior.resize(k);
    params.log_present.assign(k, std::vector<double>(v));
    params.log_absent.assign(k, std::vector<double>(v));
    const double n = static_cast<double>(X.size());
    for (size_t c = 0; c < k; ++c) {
        params.log_prior[c] = std::log(n_docs[c] / n);
        const double denom = n_docs[c] + 2.0 * alpha;
        for (size_t t = 0; t < v; ++t) {
            params.log_present[c][t] = std::log((present[c][t] + alpha) / denom);
            params.log_absent[c][t] =
                std::log((n_docs[c] - present[c][t] + alpha) / denom);
        }
    }
    return params;
}

} // namespace qiraa
