#include <algorithm>
#include <cmath>

#include "classify_internal.hpp"
#include "qiraa/classify.hpp"

namespace qiraa {
namespace linear_detail {

namespace {

double dot(const std::vector<double>& w, const SparseVector& x) {
    double acc = 0.0;
    for (size_t k = 0; k < x.idx.size(); ++k) acc += x.val[k] * w[x.idx[k]];
    return acc;
}

// log(1 + exp(-z)) without overflow
double log_loss(double z) {
    return z >= 0 ? std::log1p(std::exp(-z)) : -z + std::log1p(std::exp(z));
}

double penalty_term(const std::vector<double>& w, Penalty penalty, double C) {
    double r = 0.0;
    if (penalty == Penalty::L2) {
        for (double x : w) r += x * x;
        r *= 0.5;
    } else {
        for (double x : w) r += std::abs(x);
    }
    return r / C;
}

void add_penalty_gradient(const std::vector<double>& w, Penalty penalty, double C,
                          std::vector<double>& grad) {
    if (penalty == Penalty::L2) {
        for (size_t j = 0; j < w.size(); ++j) grad[j] += w[j] / C;
    } else {
        for (size_t j = 0; j < w.size(); ++j) {
            if (w[j] > 0)
                grad[j] += 1.0 / C;
            else if (w[j] < 0)
                grad[j] -= 1.0 / C;
        }
    }
}

} // namespace

double logreg_objective(const std::vector<double>& w, double b,
                        const std::vector<SparseVector>& X,
                        const std::vector<int>& y, Penalty penalty, double C) {
    double f = 0.0;
    for (size_t i = 0; i < X.size(); ++i) f += log_loss(y[i] * (dot(w, X[i]) + b));
    return f + penalty_term(w, penalty, C);
}

void logreg_gradient(const std::vector<double>& w, double b,
                     const std::vector<SparseVector>& X, const std::vector<int>& y,
                     Penalty penalty, double C, std::vector<double>& grad_w,
                     double& grad_b) {
    grad_w.assign(w.size(), 0.0);
    grad_b = 0.0;
    for (size_t i = 0; i < X.size(); ++i) {
        const double z = y[i] * (dot(w, X[i]) + b);
        // d/dz log(1+exp(-z)) = -sigmoid(-z)
        const double coeff =
            -y[i] * (z >= 0 ? std::exp(-z) / (1.0 + std::exp(-z))
                            : 1.0 / (1.0 + std::exp(z)));
        for (size_t k = 0; k < X[i].idx.size(); ++k)
            grad_w[X[i].idx[k]] += coeff * X[i].val[k];
        grad_b += coeff;
    }
    add_penalty_gradient(w, penalty, C, grad_w);
}

double svm_objective(const std::vector<double>& w, double b,
                     const std::vector<SparseVector>& X, const std::vector<int>& y,
                     Penalty penalty, double C, SvmLoss loss) {
    double f = 0.0;
    for (size_t i = 0; i < X.size(); ++i) {
        const double gap = 1.0 - y[i] * (dot(w, X[i]) + b);
        if (gap > 0) f += loss == SvmLoss::Hinge ? gap : gap * gap;
    }
    return f + penalty_term(w, penalty, C);
}

void svm_subgradient(const std::vector<double>& w, double b,
                     const std::vector<SparseVector>& X, const std::vector<int>& y,
                     Penalty penalty, double C, SvmLoss loss,
                     std::vector<double>& grad_w, double& grad_b) {
    grad_w.assign(w.size(), 0.0);
    grad_b = 0.0;
    for (size_t i = 0; i < X.size(); ++i) {
        const double gap = 1.0 - y[i] * (dot(w, X[i]) + b);
        if (gap <= 0) continue;
        const double coeff =
            loss == SvmLoss::Hinge ? -static_cast<double>(y[i]) : -2.0 * gap * y[i];
        for (size_t k = 0; k < X[i].idx.size(); ++k)
            grad_w[X[i].idx[k]] += coeff * X[i].val[k];
        grad_b += coeff;
    }
    add_penalty_gradient(w, penalty, C, grad_w);
}

} // namespace linear_detail

namespace {

using linear_detail::logreg_objective;
using linear_detail::svm_objective;
using linear_detail::svm_subgradient;

struct Head {
    std::vector<double> w;
    double b = 0.0;
};

std::vector<int> ovr_targets(const std::vector<Label>& y, Label positive) {
    std::vector<int> t(y.size());
    for (size_t i = 0; i < y.size(); ++i) t[i] = y[i] == positive ? 1 : -1;
    return t;
}

/// Smooth part of the logistic objective and its gradient (penalty excluded);
/// the L1 penalty is handled by the proximal step instead.
double logreg_smooth(const std::vector<double>& w, double b,
                     const std::vector<SparseVector>& X, const std::vector<int>& y,
                     std::vector<double>& grad_w, double& grad_b) {
    grad_w.assign(w.size(), 0.0);
    grad_b = 0.0;
    double f = 0.0;
    for (size_t i = 0; i < X.size(); ++i) {
        const double z = y[i] * (linear_detail::dot(w, X[i]) + b);
        f += linear_detail::log_loss(z);
        const double coeff =
            -y[i] * (z >= 0 ? std::exp(-z) / (1.0 + std::exp(-z))
                            : 1.0 / (1.0 + std::exp(z)));
        for (size_t k = 0; k < X[i].idx.size(); ++k)
            grad_w[X[i].idx[k]] += coeff * X[i].val[k];
        grad_b += coeff;
    }
    return f;
}

double soft_threshold(double x, double t) {
    if (x > t) return x - t;
    if (x < -t) return x + t;
    return 0.0;
}

/// Proximal gradient descent with backtracking. With the L2 penalty the
/// proximal step degenerates to a plain gradient step, so one routine covers
/// both penalties. Stops when the relative objective change drops below tol.
Head fit_logreg_head(const std::vector<SparseVector>& X, const std::vector<int>& y,
                     Penalty penalty, double C, double tol, int max_iter) {
    const size_t v = X.empty() ? 0 : X[0].dim;
    Head h;
    h.w.assign(v, 0.0);

    std::vector<double> grad_w;
    double grad_b = 0.0;
    std::vector<double> w_next(v);

    double step = 1.0;
    double f_prev = logreg_objective(h.w, h.b, X, y, penalty, C);
    for (int iter = 0; iter < max_iter; ++iter) {
        logreg_smooth(h.w, h.b, X, y, grad_w, grad_b);
        if (penalty == Penalty::L2) {
            for (size_t j = 0; j < v; ++j) grad_w[j] += h.w[j] / C;
        }

        step *= 2.0; // optimistic growth, then backtrack
        double b_next = h.b;
        double f_next = f_prev;
        for (int bt = 0; bt < 60; ++bt) {
            if (penalty == Penalty::L2) {
                for (size_t j = 0; j < v; ++j) w_next[j] = h.w[j] - step * grad_w[j];
            } else {
                const double shrink = step / C;
                for (size_t j = 0; j < v; ++j)
                    w_next[j] = soft_threshold(h.w[j] - step * grad_w[j], shrink);
            }
            b_next = h.b - step * grad_b;
            f_next = logreg_objective(w_next, b_next, X, y, penalty, C);
            if (f_next <= f_prev - 1e-12 * std::abs(f_prev) ||
                (penalty == Penalty::L1 && f_next <= f_prev)) {
                break;
            }
            step *= 0.5;
        }
        if (f_next > f_prev) break; // line search exhausted
        h.w.swap(w_next);
        h.b = b_next;
        const double rel = std::abs(f_prev - f_next) / std::max(1.0, std::abs(f_prev));
        f_prev = f_next;
        if (rel < tol) break;
    }
    return h;
}

/// Epoch-based subgradient descent with the 1/(lambda t) schedule,
/// lambda = 1/(C n). The objective is not monotone under subgradient steps,
/// so the best iterate seen (by the regularized objective) is returned.
/// The unregularized bias uses a plain 1/t step.
Head fit_svm_head(const std::vector<SparseVector>& X, const std::vector<int>& y,
                  Penalty penalty, double C, SvmLoss loss, int max_iter) {
    const size_t v = X.empty() ? 0 : X[0].dim;
    const double n = static_cast<double>(X.size());
    const double lambda = 1.0 / (C * n);

    Head h;
    h.w.assign(v, 0.0);
    Head best = h;
    double best_f = svm_objective(h.w, h.b, X, y, penalty, C, loss);

    std::vector<double> grad_w;
    double grad_b = 0.0;
    for (int t = 1; t <= max_iter; ++t) {
        svm_subgradient(h.w, h.b, X, y, penalty, C, loss, grad_w, grad_b);
        const double eta_w = 1.0 / (lambda * static_cast<double>(t) * n);
        const double eta_b = 1.0 / (static_cast<double>(t) * n);
        for (size_t j = 0; j < v; ++j) h.w[j] -= eta_w * grad_w[j];
        h.b -= eta_b * grad_b;

        const double f = svm_objective(h.w, h.b, X, y, penalty, C, loss);
        if (f < best_f) {
            best_f = f;
            best = h;
        }
    }
    return best;
}

LinearParams fit_ovr(const std::vector<SparseVector>& X, const std::vector<Label>& y,
                     const TrainConfig& config, bool logistic,
                     std::vector<Label>& classes_out) {
    detail::check_training_input(X, y);
    classes_out = detail::present_classes(y);
    if (classes_out.size() < 2)
        throw std::invalid_argument(std::string(algorithm_display(config.algorithm)) +
                                    " needs at least 2 classes in the training data");

    const int max_iter = resolve_max_iter(config);
    const int k = static_cast<int>(classes_out.size());
    std::vector<Head> heads(k);

#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < k; ++c) {
        const std::vector<int> targets = ovr_targets(y, classes_out[c]);
        heads[c] = logistic
                       ? fit_logreg_head(X, targets, config.penalty, config.C,
                                         config.tol, max_iter)
                       : fit_svm_head(X, targets, config.penalty, config.C,
                                      config.svm_loss, max_iter);
    }

    LinearParams params;
    params.logistic = logistic;
    for (Head& h : heads) {
        params.weights.push_back(std::move(h.w));
        params.bias.push_back(h.b);
    }
    return params;
}

} // namespace

LinearParams train_logreg(const std::vector<SparseVector>& X,
                          const std::vector<Label>& y, const TrainConfig& config,
                          std::vector<Label>& classes_out) {
    return fit_ovr(X, y, config, true, classes_out);
}

LinearParams train_svm(const std::vector<SparseVector>& X,
                       const std::vector<Label>& y, const TrainConfig& config,
                       std::vector<Label>& classes_out) {
    return fit_ovr(X, y, config, false, classes_out);
}

} // namespace qiraa
