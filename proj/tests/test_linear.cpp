#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "qiraa/classify.hpp"
#include "qiraa/rng.hpp"

using namespace qiraa;
using namespace qiraa::linear_detail;

namespace {

SparseVector vec(uint64_t dim, std::vector<std::pair<uint32_t, double>> entries) {
    SparseVector v;
    v.dim = dim;
    for (auto& [i, x] : entries) {
        v.idx.push_back(i);
        v.val.push_back(x);
    }
    return v;
}

// one separating feature: positive class at +1, negative at -1
void separable_toy(std::vector<SparseVector>& X, std::vector<Label>& y) {
    for (int i = 0; i < 6; ++i) {
        X.push_back(vec(2, {{0, i < 3 ? 1.0 : -1.0}, {1, 0.5}}));
        y.push_back(i < 3 ? Label::Easy : Label::Medium);
    }
}

// random sparse problem for the finite-difference checks
void random_problem(SplitMix64& rng, size_t n_docs, size_t dim,
                    std::vector<SparseVector>& X, std::vector<int>& y) {
    for (size_t i = 0; i < n_docs; ++i) {
        SparseVector v;
        v.dim = dim;
        for (uint32_t t = 0; t < dim; ++t) {
            if (rng.below(3) == 0) continue; // sparsity
            v.idx.push_back(t);
            v.val.push_back(rng.uniform() * 4.0 - 2.0);
        }
        X.push_back(std::move(v));
        y.push_back(rng.below(2) ? 1 : -1);
    }
}

double rel_error(const std::vector<double>& a, const std::vector<double>& b) {
    double diff = 0, ref = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        diff += (a[i] - b[i]) * (a[i] - b[i]);
        ref += b[i] * b[i];
    }
    return std::sqrt(diff) / std::max(std::sqrt(ref), 1e-12);
}

} // namespace

TEST_CASE("logreg separates the separable toy") {
    std::vector<SparseVector> X;
    std::vector<Label> y;
    separable_toy(X, y);

    TrainConfig cfg;
    cfg.algorithm = Algorithm::LogReg;
    std::vector<Label> classes;
    const LinearParams p = train_logreg(X, y, cfg, classes);
    REQUIRE(classes.size() == 2);
    CHECK(p.weights[0][0] > 0.0); // positive head leans on the separating feature

    ClassifierCore core{Algorithm::LogReg, classes, p};
    int correct = 0;
    for (size_t i = 0; i < X.size(); ++i)
        correct += predict_core(core, X[i], 2).label == y[i];
    CHECK(correct == 6);
}

TEST_CASE("svm separates the separable toy with nonnegative margins") {
    std::vector<SparseVector> X;
    std::vector<Label> y;
    separable_toy(X, y);

    TrainConfig cfg;
    cfg.algorithm = Algorithm::SVM;
    std::vector<Label> classes;
    const LinearParams p = train_svm(X, y, cfg, classes);
    ClassifierCore core{Algorithm::SVM, classes, p};
    int correct = 0;
    for (size_t i = 0; i < X.size(); ++i) {
        const Prediction pred = predict_core(core, X[i], 2);
        correct += pred.label == y[i];
        CHECK(pred.scores[label_index(y[i])] >= 0.0); // margin on the gold head
    }
    CHECK(correct == 6);
}

TEST_CASE("logreg gradient matches central finite differences") {
    SplitMix64 rng(424242);
    std::vector<SparseVector> X;
    std::vector<int> y;
    random_problem(rng, 50, 12, X, y);

    const double h = 1e-6;
    for (int point = 0; point < 20; ++point) {
        std::vector<double> w(12);
        for (double& x : w) x = rng.uniform() * 2.0 - 1.0;
        double b = rng.uniform() - 0.5;

        std::vector<double> grad;
        double grad_b = 0;
        logreg_gradient(w, b, X, y, Penalty::L2, 1.0, grad, grad_b);

        std::vector<double> fd(12);
        for (size_t j = 0; j < w.size(); ++j) {
            std::vector<double> wp = w, wm = w;
            wp[j] += h;
            wm[j] -= h;
            fd[j] = (logreg_objective(wp, b, X, y, Penalty::L2, 1.0) -
                     logreg_objective(wm, b, X, y, Penalty::L2, 1.0)) /
                    (2 * h);
        }
        const double fdb = (logreg_objective(w, b + h, X, y, Penalty::L2, 1.0) -
                            logreg_objective(w, b - h, X, y, Penalty::L2, 1.0)) /
                           (2 * h);
        CHECK(rel_error(grad, fd) < 1e-5);
        CHECK(std::abs(grad_b - fdb) / std::max(std::abs(fdb), 1e-6) < 1e-4);
    }
}

TEST_CASE("logreg L1 subgradient matches finite differences away from zeros") {
    SplitMix64 rng(515151);
    std::vector<SparseVector> X;
    std::vector<int> y;
    random_problem(rng, 30, 8, X, y);

    const double h = 1e-6;
    for (int point = 0; point < 10; ++point) {
        std::vector<double> w(8);
        for (double& x : w) {
            x = rng.uniform() * 2.0 - 1.0;
            if (std::abs(x) < 0.05) x = 0.1; // stay clear of the kink at 0
        }
        double b = rng.uniform() - 0.5;
        std::vector<double> grad;
        double grad_b = 0;
        logreg_gradient(w, b, X, y, Penalty::L1, 2.0, grad, grad_b);
        std::vector<double> fd(8);
        for (size_t j = 0; j < w.size(); ++j) {
            std::vector<double> wp = w, wm = w;
            wp[j] += h;
            wm[j] -= h;
            fd[j] = (logreg_objective(wp, b, X, y, Penalty::L1, 2.0) -
                     logreg_objective(wm, b, X, y, Penalty::L1, 2.0)) /
                    (2 * h);
        }
        CHECK(rel_error(grad, fd) < 1e-5);
    }
}

TEST_CASE("svm subgradient matches finite differences away from hinge kinks") {
    SplitMix64 rng(616161);
    std::vector<SparseVector> X;
    std::vector<int> y;
    random_problem(rng, 40, 10, X, y);

    const double h = 1e-6;
    int checked = 0;
    for (int attempt = 0; attempt < 200 && checked < 20; ++attempt) {
        std::vector<double> w(10);
        for (double& x : w) x = rng.uniform() * 2.0 - 1.0;
        const double b = rng.uniform() - 0.5;

        // only evaluate where every margin is at least 1e-3 from the kink
        bool safe = true;
        for (size_t i = 0; i < X.size() && safe; ++i) {
            double dot = b;
            for (size_t k = 0; k < X[i].idx.size(); ++k)
                dot += X[i].val[k] * w[X[i].idx[k]];
            safe = std::abs(1.0 - y[i] * dot) > 1e-3;
        }
        if (!safe) continue;
        ++checked;

        std::vector<double> grad;
        double grad_b = 0;
        svm_subgradient(w, b, X, y, Penalty::L2, 1.0, SvmLoss::Hinge, grad, grad_b);
        std::vector<double> fd(10);
        for (size_t j = 0; j < w.size(); ++j) {
            std::vector<double> wp = w, wm = w;
            wp[j] += h;
            wm[j] -= h;
            fd[j] = (svm_objective(wp, b, X, y, Penalty::L2, 1.0, SvmLoss::Hinge) -
                     svm_objective(wm, b, X, y, Penalty::L2, 1.0, SvmLoss::Hinge)) /
                    (2 * h);
        }
        CHECK(rel_error(grad, fd) < 1e-5);
    }
    CHECK(checked >= 10);
}

TEST_CASE("svm final objective never exceeds the objective at zero") {
    SplitMix64 rng(717171);
    std::vector<SparseVector> X;
    std::vector<int> y_int;
    random_problem(rng, 30, 6, X, y_int);
    std::vector<Label> y;
    for (int t : y_int) y.push_back(t > 0 ? Label::Easy : Label::Medium);

    for (SvmLoss loss : {SvmLoss::Hinge, SvmLoss::SquaredHinge}) {
        for (Penalty pen : {Penalty::L2, Penalty::L1}) {
            TrainConfig cfg;
            cfg.algorithm = Algorithm::SVM;
            cfg.svm_loss = loss;
            cfg.penalty = pen;
            cfg.max_iter = 200;
            std::vector<Label> classes;
            const LinearParams p = train_svm(X, y, cfg, classes);
            for (size_t head = 0; head < classes.size(); ++head) {
                const auto targets = [&] {
                    std::vector<int> t(y.size());
                    for (size_t i = 0; i < y.size(); ++i)
                        t[i] = y[i] == classes[head] ? 1 : -1;
                    return t;
                }();
                const double f = svm_objective(p.weights[head], p.bias[head], X,
                                               targets, pen, cfg.C, loss);
                const double f0 = svm_objective(std::vector<double>(6, 0.0), 0.0, X,
                                                targets, pen, cfg.C, loss);
                CHECK(f <= f0);
                CHECK(f0 == doctest::Approx(static_cast<double>(X.size())));
            }
        }
    }
}

TEST_CASE("tiny C shrinks weights and collapses to the majority class") {
    std::vector<SparseVector> X;
    std::vector<Label> y;
    separable_toy(X, y);
    // tilt the class balance: add two more Medium docs
    X.push_back(vec(2, {{0, -1.0}}));
    X.push_back(vec(2, {{0, -0.9}}));
    y.push_back(Label::Medium);
    y.push_back(Label::Medium);

    TrainConfig strong;
    strong.algorithm = Algorithm::LogReg;
    strong.C = 0.001;
    std::vector<Label> classes;
    const LinearParams weak = train_logreg(X, y, strong, classes);

    double wsum = 0;
    for (const auto& wv : weak.weights)
        for (double w : wv) wsum += std::abs(w);
    CHECK(wsum < 0.1);

    ClassifierCore core{Algorithm::LogReg, classes, weak};
    int medium = 0;
    for (const SparseVector& x : X)
        medium += predict_core(core, x, 2).label == Label::Medium;
    CHECK(medium == static_cast<int>(X.size()));
}

TEST_CASE("linear trainers refuse single-class input") {
    const std::vector<SparseVector> X = {vec(2, {{0, 1.0}}), vec(2, {{1, 1.0}})};
    const std::vector<Label> y = {Label::Easy, Label::Easy};
    TrainConfig cfg;
    std::vector<Label> classes;
    cfg.algorithm = Algorithm::LogReg;
    CHECK_THROWS_AS(train_logreg(X, y, cfg, classes), std::invalid_argument);
    cfg.algorithm = Algorithm::SVM;
    CHECK_THROWS_AS(train_svm(X, y, cfg, classes), std::invalid_argument);
}
