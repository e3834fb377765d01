// Benchmark the OpenMP kernels against their serial reference loops:
// per-document featurization and forest training. Both paths must produce
// identical results; the benchmark checks that while timing them.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qiraa/classify.hpp"
#include "qiraa/eval.hpp"
#include "qiraa/parallel.hpp"
#include "qiraa/synth.hpp"

using namespace qiraa;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

template <typename F>
double timed(F&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return seconds_since(t0);
}

} // namespace

int main(int argc, char** argv) {
    apply_thread_cap();
    int scale = 4; // corpus size multiplier
    if (argc > 1) scale = std::atoi(argv[1]);
    if (scale < 1) scale = 1;

#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; both columns run the serial path\n");
#endif

    GenConfig gen;
    for (int c = 0; c < kNumLabels; ++c) gen.docs_per_class[c] *= scale;
    gen.overlap = 0.3;
    const Corpus corpus = generate(gen);
    std::printf("synthetic corpus: %zu documents (scale %d)\n\n", corpus.size(),
                scale);

    PipelineConfig pipeline = PipelineConfig::defaults();
    pipeline.ngrams = {1, 2};
    pipeline.representation = Representation::Tfidf;

    std::printf("%-28s %10s %10s %8s\n", "kernel", "serial(s)", "openmp(s)",
                "speedup");

    // featurization: preprocess + n-grams
    std::vector<std::vector<std::string>> terms_serial, terms_par;
    const double t_terms_s =
        timed([&] { terms_serial = corpus_terms_serial(corpus, pipeline); });
    const double t_terms_p = timed([&] { terms_par = corpus_terms(corpus, pipeline); });
    std::printf("%-28s %10.3f %10.3f %7.2fx%s\n", "preprocess+ngrams", t_terms_s,
                t_terms_p, t_terms_s / t_terms_p,
                terms_serial == terms_par ? "" : "  MISMATCH");

    // vectorization against a fitted feature space
    const FeatureSpace space = fit_features(terms_par, pipeline);
    std::vector<SparseVector> vec_serial, vec_par;
    const double t_vec_s = timed(
        [&] { vec_serial = transform_corpus_serial(terms_par, space, pipeline); });
    const double t_vec_p =
        timed([&] { vec_par = transform_corpus(terms_par, space, pipeline); });
    bool vec_same = vec_serial.size() == vec_par.size();
    for (size_t i = 0; vec_same && i < vec_serial.size(); ++i)
        vec_same = vec_serial[i].idx == vec_par[i].idx &&
                   vec_serial[i].val == vec_par[i].val;
    std::printf("%-28s %10.3f %10.3f %7.2fx%s\n", "count/tfidf vectorization",
                t_vec_s, t_vec_p, t_vec_s / t_vec_p, vec_same ? "" : "  MISMATCH");

    // forest training
    std::vector<Label> y;
    for (const Document& d : corpus.docs) y.push_back(*d.label);
    TrainConfig rf;
    rf.algorithm = Algorithm::RF;
    rf.seed = 42;
    std::vector<Label> classes_s, classes_p;
    ForestParams forest_serial, forest_par;
    const double t_rf_s =
        timed([&] { forest_serial = train_rf_serial(vec_par, y, rf, classes_s); });
    const double t_rf_p = timed([&] { forest_par = train_rf(vec_par, y, rf, classes_p); });
    bool rf_same = forest_serial.trees.size() == forest_par.trees.size();
    for (size_t t = 0; rf_same && t < forest_serial.trees.size(); ++t) {
        const auto& a = forest_serial.trees[t].nodes;
        const auto& b = forest_par.trees[t].nodes;
        rf_same = a.size() == b.size();
        for (size_t n = 0; rf_same && n < a.size(); ++n)
            rf_same = a[n].feature == b[n].feature &&
                      a[n].threshold == b[n].threshold && a[n].left == b[n].left &&
                      a[n].right == b[n].right && a[n].counts == b[n].counts;
    }
    std::printf("%-28s %10.3f %10.3f %7.2fx%s\n", "random forest training", t_rf_s,
                t_rf_p, t_rf_s / t_rf_p, rf_same ? "" : "  MISMATCH");

    // evaluation grid
    GridReport grid_serial, grid_par;
    const double t_grid_s =
        timed([&] { grid_serial = run_grid(corpus, 42, 0.8, false); });
    const double t_grid_p = timed([&] { grid_par = run_grid(corpus, 42, 0.8, true); });
    const bool grid_same = grid_to_json(grid_serial) == grid_to_json(grid_par);
    std::printf("%-28s %10.3f %10.3f %7.2fx%s\n", "30-cell evaluation grid",
                t_grid_s, t_grid_p, t_grid_s / t_grid_p,
                grid_same ? "" : "  MISMATCH");

    return (terms_serial == terms_par && vec_same && rf_same && grid_same) ? 0 : 1;
}
