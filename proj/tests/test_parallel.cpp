// The OpenMP kernels must agree bitwise with their serial reference loops.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qiraa/classify.hpp"
#include "qiraa/eval.hpp"
#include "qiraa/parallel.hpp"
#include "qiraa/synth.hpp"

using namespace qiraa;

namespace {

Corpus bench_corpus() {
    GenConfig gen;
    gen.docs_per_class = {20, 22, 24, 30};
    gen.vocab_size = {25, 30, 35, 40};
    gen.overlap = 0.25;
    gen.doc_len_min = 12;
    gen.doc_len_max = 30;
    return generate(gen);
}

} // namespace

TEST_CASE("parallel featurization equals the serial reference") {
    const Corpus corpus = bench_corpus();
    PipelineConfig pipeline = PipelineConfig::defaults();
    pipeline.ngrams = {1, 2};
    pipeline.representation = Representation::Tfidf;

    const auto serial = corpus_terms_serial(corpus, pipeline);
    const auto parallel = corpus_terms(corpus, pipeline);
    REQUIRE(serial == parallel);

    const FeatureSpace space = fit_features(serial, pipeline);
    const auto xs = transform_corpus_serial(serial, space, pipeline);
    const auto xp = transform_corpus(parallel, space, pipeline);
    REQUIRE(xs.size() == xp.size());
    for (size_t i = 0; i < xs.size(); ++i) {
        REQUIRE(xs[i].idx == xp[i].idx);
        REQUIRE(xs[i].val == xp[i].val); // bitwise
    }
}

TEST_CASE("parallel forest training equals the serial reference") {
    const Corpus corpus = bench_corpus();
    PipelineConfig pipeline = PipelineConfig::defaults();
    const auto terms = corpus_terms(corpus, pipeline);
    const FeatureSpace space = fit_features(terms, pipeline);
    const auto X = transform_corpus(terms, space, pipeline);
    std::vector<Label> y;
    for (const Document& d : corpus.docs) y.push_back(*d.label);

    TrainConfig cfg;
    cfg.algorithm = Algorithm::RF;
    cfg.n_trees = 20;
    cfg.seed = 777;
    std::vector<Label> cs, cp;
    const ForestParams serial = train_rf_serial(X, y, cfg, cs);
    const ForestParams parallel = train_rf(X, y, cfg, cp);
    REQUIRE(serial.trees.size() == parallel.trees.size());
    for (size_t t = 0; t < serial.trees.size(); ++t) {
        const auto& a = serial.trees[t].nodes;
        const auto& b = parallel.trees[t].nodes;
        REQUIRE(a.size() == b.size());
        for (size_t n = 0; n < a.size(); ++n) {
            REQUIRE(a[n].feature == b[n].feature);
            REQUIRE(a[n].threshold == b[n].threshold);
            REQUIRE(a[n].left == b[n].left);
            REQUIRE(a[n].right == b[n].right);
            REQUIRE(a[n].counts == b[n].counts);
        }
    }
}

TEST_CASE("parallel grid equals the serial grid byte for byte") {
    const Corpus corpus = bench_corpus();
    const GridReport serial = run_grid(corpus, 5, 0.8, false);
    const GridReport parallel = run_grid(corpus, 5, 0.8, true);
    CHECK(grid_to_json(serial) == grid_to_json(parallel));
}

TEST_CASE("thread cap reads QIRAA_THREADS") {
    CHECK(thread_cap() >= 0); // whatever the environment says, it parses
}
