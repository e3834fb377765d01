#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "qiraa/eval.hpp"
#include "qiraa/rng.hpp"
#include "qiraa/synth.hpp"

using namespace qiraa;

TEST_CASE("confusion counts gold rows against predicted columns") {
    const std::vector<Label> gold = {Label::Easy, Label::Medium, Label::Difficult,
                                     Label::VeryDifficult};
    const ConfusionMatrix perfect = confusion(gold, gold);
    for (int r = 0; r < kNumLabels; ++r)
        for (int c = 0; c < kNumLabels; ++c)
            CHECK(perfect.m[r][c] == (r == c ? 1 : 0));

    const std::vector<Label> y_true = {Label::Easy, Label::Easy, Label::Medium,
                                       Label::Medium};
    const std::vector<Label> y_pred = {Label::Easy, Label::Medium, Label::Medium,
                                       Label::Medium};
    const ConfusionMatrix cm = confusion(y_true, y_pred);
    CHECK(cm.m[0][0] == 1);
    CHECK(cm.m[0][1] == 1);
    CHECK(cm.m[1][0] == 0);
    CHECK(cm.m[1][1] == 2);
    CHECK(cm.total() == 4);

    CHECK_THROWS_AS(confusion({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(confusion({Label::Easy}, {}), std::invalid_argument);
}

TEST_CASE("metrics reproduce the two-class worked example") {
    const std::vector<Label> y_true = {Label::Easy, Label::Easy, Label::Medium,
                                       Label::Medium};
    const std::vector<Label> y_pred = {Label::Easy, Label::Medium, Label::Medium,
                                       Label::Medium};
    const EvalReport rep = metrics(confusion(y_true, y_pred));
    CHECK(rep.accuracy == doctest::Approx(0.75));
    CHECK(rep.precision[0] == doctest::Approx(1.0));
    CHECK(rep.precision[1] == doctest::Approx(2.0 / 3.0));
    CHECK(rep.recall[0] == doctest::Approx(0.5));
    CHECK(rep.recall[1] == doctest::Approx(1.0));
    // macro averages ignore the two absent classes
    CHECK(rep.macro_precision == doctest::Approx((1.0 + 2.0 / 3.0) / 2));
    CHECK(rep.macro_recall == doctest::Approx(0.75));
}

TEST_CASE("metrics edge cases") {
    // perfect diagonal: everything is 1
    const std::vector<Label> gold = {Label::Easy, Label::Medium, Label::Difficult,
                                     Label::VeryDifficult};
    EvalReport rep = metrics(confusion(gold, gold));
    CHECK(rep.accuracy == 1.0);
    CHECK(rep.macro_precision == doctest::Approx(1.0));
    CHECK(rep.macro_recall == doctest::Approx(1.0));
    CHECK(rep.macro_f1 == doctest::Approx(1.0));

    // all predictions one class on a balanced 4-class gold: accuracy 1/4
    std::vector<Label> y_true, y_pred;
    for (Label l : all_labels())
        for (int i = 0; i < 5; ++i) {
            y_true.push_back(l);
            y_pred.push_back(Label::Easy);
        }
    rep = metrics(confusion(y_true, y_pred));
    CHECK(rep.accuracy == doctest::Approx(0.25));
    CHECK(rep.precision[1] == 0.0); // never predicted
    CHECK(rep.precision[2] == 0.0);
    CHECK(rep.precision[3] == 0.0);
}

TEST_CASE("metric identities hold on random confusion matrices") {
    SplitMix64 rng(5150);
    for (int round = 0; round < 100; ++round) {
        ConfusionMatrix cm;
        int64_t total = 0;
        for (int r = 0; r < kNumLabels; ++r) {
            if (rng.below(5) == 0) continue; // occasional empty gold class
            for (int c = 0; c < kNumLabels; ++c) {
                cm.m[r][c] = static_cast<int64_t>(rng.below(50));
                total += cm.m[r][c];
            }
        }
        if (total == 0) {
            cm.m[0][0] = 1;
            total = 1;
        }
        const EvalReport rep = metrics(cm);

        // accuracy is exactly trace over total
        CHECK(rep.accuracy == static_cast<double>(cm.trace()) /
                                  static_cast<double>(cm.total()));

        // micro identity: support-weighted recall equals accuracy
        double micro = 0;
        for (int c = 0; c < kNumLabels; ++c)
            micro += static_cast<double>(rep.support[c]) * rep.recall[c];
        micro /= static_cast<double>(cm.total());
        CHECK(std::abs(micro - rep.accuracy) < 1e-12);

        // macro f1 bracketed by the per-class extremes
        double lo = 1.0, hi = 0.0;
        bool any = false;
        for (int c = 0; c < kNumLabels; ++c) {
            if (rep.support[c] == 0) continue;
            lo = std::min(lo, rep.f1[c]);
            hi = std::max(hi, rep.f1[c]);
            any = true;
        }
        if (any) {
            CHECK(rep.macro_f1 >= lo - 1e-12);
            CHECK(rep.macro_f1 <= hi + 1e-12);
        }

        for (int c = 0; c < kNumLabels; ++c) {
            CHECK(rep.precision[c] >= 0.0);
            CHECK(rep.precision[c] <= 1.0);
            CHECK(rep.recall[c] >= 0.0);
            CHECK(rep.recall[c] <= 1.0);
            CHECK(rep.f1[c] >= 0.0);
            CHECK(rep.f1[c] <= 1.0);
        }
    }
}

TEST_CASE("run_experiment is deterministic and fills the config echo") {
    GenConfig gen;
    gen.docs_per_class = {12, 12, 12, 12};
    gen.vocab_size = {15, 20, 25, 30};
    gen.doc_len_min = 10;
    gen.doc_len_max = 20;
    const Corpus corpus = generate(gen);

    CellConfig cell;
    cell.representation = Representation::Tfidf;
    cell.ngrams = {1, 1};
    cell.algorithm = Algorithm::MNB;

    const EvalReport a = run_experiment(corpus, cell, 42);
    const EvalReport b = run_experiment(corpus, cell, 42);
    CHECK(report_to_json_string(a) == report_to_json_string(b));
    CHECK(a.config.algorithm == Algorithm::MNB);
    CHECK(a.config.seed == 42);
    CHECK(a.accuracy >= 0.9); // disjoint vocabularies are easy
}

TEST_CASE("features are fitted on the training split only") {
    GenConfig gen;
    gen.docs_per_class = {10, 10, 10, 10};
    const Corpus corpus = generate(gen);
    auto [train, test] = split_corpus(corpus, 0.8, 3);

    PipelineConfig pipeline = PipelineConfig::defaults();
    pipeline.ngrams = {1, 1};
    TrainConfig cfg;
    cfg.algorithm = Algorithm::MNB;
    const TrainedModel model = train_model(train, pipeline, cfg);

    CHECK(model.features.vocab.doc_count == train.size());

    // a term that only occurs in the test half must be out of vocabulary
    std::set<std::string> train_terms;
    for (const auto& terms : corpus_terms(train, pipeline))
        train_terms.insert(terms.begin(), terms.end());
    int test_only_terms = 0;
    for (const auto& terms : corpus_terms(test, pipeline))
        for (const std::string& t : terms)
            if (!train_terms.count(t)) {
                ++test_only_terms;
                CHECK(!model.features.vocab.lookup(t).has_value());
            }
    CHECK(test_only_terms > 0); // the check above actually exercised something
}

TEST_CASE("grid runs all 30 cells in table order and is deterministic") {
    GenConfig gen;
    gen.docs_per_class = {10, 10, 10, 10};
    gen.vocab_size = {12, 15, 18, 21};
    gen.doc_len_min = 8;
    gen.doc_len_max = 14;
    const Corpus corpus = generate(gen);

    const GridReport grid = run_grid(corpus, 11);
    REQUIRE(grid.cells.size() == 30);

    // ordering: count tables first (unigrams, bigrams, uni+bi), then tfidf
    static const char* expected_rep[6] = {"count", "count", "count",
                                          "tfidf", "tfidf", "tfidf"};
    static const char* expected_ngrams[6] = {"1", "2", "1-2", "1", "2", "1-2"};
    static const Algorithm expected_algos[5] = {Algorithm::MNB, Algorithm::BNB,
                                                Algorithm::LogReg, Algorithm::SVM,
                                                Algorithm::RF};
    for (int block = 0; block < 6; ++block)
        for (int a = 0; a < 5; ++a) {
            const EvalReport& rep = grid.cells[block * 5 + a];
            CHECK(std::string(representation_key(rep.config.representation)) ==
                  expected_rep[block]);
            CHECK(ngram_key(rep.config.ngrams) == expected_ngrams[block]);
            CHECK(rep.config.algorithm == expected_algos[a]);
        }

    const GridReport again = run_grid(corpus, 11);
    CHECK(grid_to_json(grid) == grid_to_json(again));

    // rendered tables carry the paper-style header
    const std::string text = render_grid_tables(grid);
    CHECK(text.find("Algorithm") != std::string::npos);
    CHECK(text.find("F1-score") != std::string::npos);
    CHECK(text.find("Table 6.") != std::string::npos);
}
