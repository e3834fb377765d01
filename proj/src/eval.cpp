#include "qiraa/eval.hpp"

#include <cinttypes>
#include <cstdio>

#include <json.hpp>

#include "qiraa/errors.hpp"

namespace qiraa {

using nlohmann::ordered_json;

int64_t ConfusionMatrix::total() const {
    int64_t n = 0;
    for (const auto& row : m)
        for (int64_t x : row) n += x;
    return n;
}

int64_t ConfusionMatrix::trace() const {
    int64_t n = 0;
    for (int c = 0; c < kNumLabels; ++c) n += m[c][c];
    return n;
}

int64_t ConfusionMatrix::row_sum(int c) const {
    int64_t n = 0;
    for (int64_t x : m[c]) n += x;
    return n;
}

int64_t ConfusionMatrix::col_sum(int c) const {
    int64_t n = 0;
    for (int r = 0; r < kNumLabels; ++r) n += m[r][c];
    return n;
}

ConfusionMatrix confusion(const std::vector<Label>& y_true,
                          const std::vector<Label>& y_pred) {
    if (y_true.size() != y_pred.size())
        throw std::invalid_argument("confusion: label sequences differ in length");
    if (y_true.empty())
        throw std::invalid_argument("confusion: empty label sequences");
    ConfusionMatrix cm;
    for (size_t i = 0; i < y_true.size(); ++i)
        cm.m[label_index(y_true[i])][label_index(y_pred[i])] += 1;
    return cm;
}

std::string ngram_key(const NgramConfig& config) {
    if (config.n_min == config.n_max) return std::to_string(config.n_min);
    return std::to_string(config.n_min) + "-" + std::to_string(config.n_max);
}

NgramConfig parse_ngram_key(const std::string& s) {
    if (s == "1") return {1, 1};
    if (s == "2") return {2, 2};
    if (s == "1-2") return {1, 2};
    throw UsageError("unknown n-gram setting '" + s + "' (expected 1, 2 or 1-2)");
}

EvalReport metrics(const ConfusionMatrix& cm) {
    const int64_t total = cm.total();
    if (total <= 0) throw std::invalid_argument("metrics: empty confusion matrix");

    EvalReport rep;
    rep.cm = cm;
    rep.accuracy = static_cast<double>(cm.trace()) / static_cast<double>(total);

    double macro_p = 0, macro_r = 0, macro_f = 0;
    double wsum_p = 0, wsum_r = 0, wsum_f = 0;
    int present = 0;
    int64_t present_support = 0;
    for (int c = 0; c < kNumLabels; ++c) {
        const int64_t rowsum = cm.row_sum(c);
        const int64_t colsum = cm.col_sum(c);
        rep.support[c] = rowsum;
        if (colsum > 0) {
            rep.precision[c] =
                static_cast<double>(cm.m[c][c]) / static_cast<double>(colsum);
        } else {
            rep.precision[c] = 0.0;
            if (rowsum > 0)
                std::fprintf(stderr,
                             "warning: class '%s' was never predicted; "
                             "its precision is reported as 0\n",
                             label_name(static_cast<Label>(c)));
        }
        rep.recall[c] = rowsum > 0 ? static_cast<double>(cm.m[c][c]) /
                                         static_cast<double>(rowsum)
                                   : 0.0;
        const double pr = rep.precision[c] + rep.recall[c];
        rep.f1[c] = pr > 0 ? 2.0 * rep.precision[c] * rep.recall[c] / pr : 0.0;
        if (rowsum > 0) {
            ++present;
            present_support += rowsum;
            macro_p += rep.precision[c];
            macro_r += rep.recall[c];
            macro_f += rep.f1[c];
            wsum_p += static_cast<double>(rowsum) * rep.precision[c];
            wsum_r += static_cast<double>(rowsum) * rep.recall[c];
            wsum_f += static_cast<double>(rowsum) * rep.f1[c];
        }
    }
    if (present > 0) {
        rep.macro_precision = macro_p / present;
        rep.macro_recall = macro_r / present;
        rep.macro_f1 = macro_f / present;
        rep.weighted_precision = wsum_p / static_cast<double>(present_support);
        rep.weighted_recall = wsum_r / static_cast<double>(present_support);
        rep.weighted_f1 = wsum_f / static_cast<double>(present_support);
    }
    return rep;
}

EvalReport evaluate_split(const Corpus& train, const Corpus& test,
                          const PipelineConfig& pipeline, const TrainConfig& config) {
    TrainedModel model = train_model(train, pipeline, config);

    std::vector<Label> y_true, y_pred;
    y_true.reserve(test.size());
    y_pred.reserve(test.size());
    const auto test_terms = corpus_terms(test, pipeline);
    for (size_t i = 0; i < test.size(); ++i) {
        const Document& doc = test.docs[i];
        if (!doc.label) throw DataError("unlabeled document '" + doc.id + "'");
        y_true.push_back(*doc.label);
        const SparseVector x = transform_terms(test_terms[i], model.features, pipeline);
        y_pred.push_back(predict_vector(model, x).label);
    }

    EvalReport rep = metrics(confusion(y_true, y_pred));
    rep.config.representation = pipeline.representation;
    rep.config.ngrams = pipeline.ngrams;
    rep.config.algorithm = config.algorithm;
    rep.config.seed = config.seed;
    return rep;
}

namespace {

int distinct_labels(const Corpus& corpus) {
    std::array<bool, kNumLabels> seen{};
    for (const Document& d : corpus.docs)
        if (d.label) seen[label_index(*d.label)] = true;
    int n = 0;
    for (bool b : seen) n += b;
    return n;
}

PipelineConfig cell_pipeline(const CellConfig& cell) {
    PipelineConfig pipeline = PipelineConfig::defaults();
    pipeline.representation = cell.representation;
    pipeline.ngrams = cell.ngrams;
    return pipeline;
}

} // namespace

EvalReport run_experiment(const Corpus& corpus, const CellConfig& cell,
                          uint64_t seed, double train_fraction) {
    if (distinct_labels(corpus) == 1)
        std::fprintf(stderr,
                     "warning: corpus has a single class; accuracy is trivially 1\n");
    auto [train, test] = split_corpus(corpus, train_fraction, seed);

    TrainConfig config;
    config.algorithm = cell.algorithm;
    config.seed = seed;

    EvalReport rep = evaluate_split(train, test, cell_pipeline(cell), config);
    rep.config = cell;
    rep.config.seed = seed;
    return rep;
}

GridReport run_grid(const Corpus& corpus, uint64_t seed, double train_fraction,
                    bool parallel) {
    static constexpr std::array<Algorithm, 5> kAlgos = {
        Algorithm::MNB, Algorithm::BNB, Algorithm::LogReg, Algorithm::SVM,
        Algorithm::RF};
    static constexpr std::array<Representation, 2> kReps = {Representation::Count,
                                                            Representation::Tfidf};
    static constexpr std::array<NgramConfig, 3> kNgrams = {
        NgramConfig{1, 1}, NgramConfig{2, 2}, NgramConfig{1, 2}};

    GridReport grid;
    grid.seed = seed;
    grid.train_fraction = train_fraction;
    grid.cells.resize(kReps.size() * kNgrams.size() * kAlgos.size());

    // one shared split for every cell
    auto [train, test] = split_corpus(corpus, train_fraction, seed);
    std::vector<Label> y_train, y_true;
    for (const Document& d : train.docs) {
        if (!d.label) throw DataError("unlabeled document '" + d.id + "'");
        y_train.push_back(*d.label);
    }
    for (const Document& d : test.docs) {
        if (!d.label) throw DataError("unlabeled document '" + d.id + "'");
        y_true.push_back(*d.label);
    }

    for (size_t g = 0; g < kNgrams.size(); ++g) {
        PipelineConfig base = PipelineConfig::defaults();
        base.ngrams = kNgrams[g];

        const auto train_terms = corpus_terms(train, base);
        const auto test_terms = corpus_terms(test, base);

        // features per representation, fitted on the training half only
        std::array<FeatureSpace, 2> spaces;
        std::array<std::vector<SparseVector>, 2> X_train, X_test;
        std::array<PipelineConfig, 2> pipelines;
        for (size_t r = 0; r < kReps.size(); ++r) {
            pipelines[r] = base;
            pipelines[r].representation = kReps[r];
            spaces[r] = fit_features(train_terms, pipelines[r]);
            X_train[r] = transform_corpus(train_terms, spaces[r], pipelines[r]);
            X_test[r] = transform_corpus(test_terms, spaces[r], pipelines[r]);
        }

        const int cells_here = static_cast<int>(kReps.size() * kAlgos.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
        for (int ra = 0; ra < cells_here; ++ra) {
            const size_t r = static_cast<size_t>(ra) / kAlgos.size();
            const size_t a = static_cast<size_t>(ra) % kAlgos.size();

            TrainConfig config;
            config.algorithm = kAlgos[a];
            config.seed = seed;

            ClassifierCore core = train_classifier(X_train[r], y_train, config);
            std::vector<Label> y_pred;
            y_pred.reserve(X_test[r].size());
            for (const SparseVector& x : X_test[r])
                y_pred.push_back(
                    predict_core(core, x, spaces[r].vocab.size()).label);

            EvalReport rep = metrics(confusion(y_true, y_pred));
            rep.config.representation = kReps[r];
            rep.config.ngrams = kNgrams[g];
            rep.config.algorithm = kAlgos[a];
            rep.config.seed = seed;

            // table order: representation is the slowest axis, then n-grams
            const size_t cell_index =
                (r * kNgrams.size() + g) * kAlgos.size() + a;
            grid.cells[cell_index] = std::move(rep);
        }
    }
    return grid;
}

namespace {

ordered_json report_to_json(const EvalReport& rep) {
    ordered_json j;
    j["representation"] = representation_key(rep.config.representation);
    j["ngrams"] = ngram_key(rep.config.ngrams);
    j["algorithm"] = algorithm_key(rep.config.algorithm);
    j["seed"] = rep.config.seed;
    j["accuracy"] = rep.accuracy;
    j["macro_precision"] = rep.macro_precision;
    j["macro_recall"] = rep.macro_recall;
    j["macro_f1"] = rep.macro_f1;
    j["weighted_precision"] = rep.weighted_precision;
    j["weighted_recall"] = rep.weighted_recall;
    j["weighted_f1"] = rep.weighted_f1;
    ordered_json per_class = ordered_json::array();
    for (int c = 0; c < kNumLabels; ++c) {
        ordered_json pc;
        pc["label"] = label_name(static_cast<Label>(c));
        pc["support"] = rep.support[c];
        pc["precision"] = rep.precision[c];
        pc["recall"] = rep.recall[c];
        pc["f1"] = rep.f1[c];
        per_class.push_back(std::move(pc));
    }
    j["per_class"] = std::move(per_class);
    ordered_json cmj = ordered_json::array();
    for (int r = 0; r < kNumLabels; ++r) cmj.push_back(rep.cm.m[r]);
    j["confusion"] = std::move(cmj);
    return j;
}

} // namespace

std::string report_to_json_string(const EvalReport& report) {
    return report_to_json(report).dump(2);
}

std::string grid_to_json(const GridReport& grid) {
    ordered_json j;
    j["format"] = "qiraa-grid";
    j["seed"] = grid.seed;
    j["train_fraction"] = grid.train_fraction;
    ordered_json cells = ordered_json::array();
    for (const EvalReport& rep : grid.cells) cells.push_back(report_to_json(rep));
    j["cells"] = std::move(cells);
    return j.dump(2);
}

namespace {

void append_table_header(std::string& out) {
    char line[128];
    std::snprintf(line, sizeof(line), "%-26s %9s %10s %8s %9s\n", "Algorithm",
                  "Accuracy", "Precision", "Recall", "F1-score");
    out += line;
}

void append_report_row(std::string& out, const EvalReport& rep, Averaging avg) {
    const double p =
        avg == Averaging::Macro ? rep.macro_precision : rep.weighted_precision;
    const double r = avg == Averaging::Macro ? rep.macro_recall : rep.weighted_recall;
    const double f = avg == Averaging::Macro ? rep.macro_f1 : rep.weighted_f1;
    char line[160];
    std::snprintf(line, sizeof(line), "%-26s %8.2f%% %10.2f %8.2f %9.2f\n",
                  algorithm_display(rep.config.algorithm), rep.accuracy * 100.0, p,
                  r, f);
    out += line;
}

std::string ngram_description(const NgramConfig& cfg) {
    if (cfg.n_min == 1 && cfg.n_max == 1) return "unigrams";
    if (cfg.n_min == 2 && cfg.n_max == 2) return "bigrams";
    if (cfg.n_min == 1 && cfg.n_max == 2) return "unigrams and bigrams";
    return ngram_key(cfg) + "-grams";
}

} // namespace

std::string render_report(const EvalReport& rep, Averaging avg) {
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%s, %s vectors, %s (seed %" PRIu64 ")\n",
                  algorithm_display(rep.config.algorithm),
                  representation_key(rep.config.representation),
                  ngram_description(rep.config.ngrams).c_str(), rep.config.seed);
    out += buf;
    append_table_header(out);
    append_report_row(out, rep, avg);
    out += "\nPer-class metrics\n";
    std::snprintf(buf, sizeof(buf), "%-16s %8s %10s %8s %9s\n", "Class", "Support",
                  "Precision", "Recall", "F1-score");
    out += buf;
    for (int c = 0; c < kNumLabels; ++c) {
        std::snprintf(buf, sizeof(buf), "%-16s %8" PRId64 " %10.4f %8.4f %9.4f\n",
                      label_display(static_cast<Label>(c)), rep.support[c],
                      rep.precision[c], rep.recall[c], rep.f1[c]);
        out += buf;
    }
    out += "\nConfusion matrix (rows gold, columns predicted)\n";
    for (int r = 0; r < kNumLabels; ++r) {
        std::snprintf(buf, sizeof(buf), "%-16s", label_display(static_cast<Label>(r)));
        out += buf;
        for (int c = 0; c < kNumLabels; ++c) {
            std::snprintf(buf, sizeof(buf), " %7" PRId64, rep.cm.m[r][c]);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

std::string render_grid_tables(const GridReport& grid, Averaging avg) {
    std::string out;
    int table_no = 0;
    for (size_t block = 0; block + 5 <= grid.cells.size(); block += 5) {
        const EvalReport& first = grid.cells[block];
        char buf[192];
        ++table_no;
        std::snprintf(buf, sizeof(buf),
                      "Table %d. Performance measures with %s Vectors using %s\n",
                      table_no,
                      first.config.representation == Representation::Count
                          ? "Count"
                          : "TF-IDF",
                      ngram_description(first.config.ngrams).c_str());
        out += buf;
        append_table_header(out);
        for (size_t i = block; i < block + 5; ++i)
            append_report_row(out, grid.cells[i], avg);
        out += '\n';
    }
    return out;
}

std::string render_stats_table(const CorpusStats& stats) {
    std::string out;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%-16s %12s %12s\n", "Category", "#Documents",
                  "#Tokens");
    out += buf;
    for (int c = 0; c < kNumLabels; ++c) {
        std::snprintf(buf, sizeof(buf), "%-16s %12" PRId64 " %12" PRId64 "\n",
                      label_display(static_cast<Label>(c)), stats.doc_count[c],
                      stats.token_count[c]);
        out += buf;
    }
    std::snprintf(buf, sizeof(buf), "%-16s %12" PRId64 " %12" PRId64 "\n", "Total",
                  stats.total_docs, stats.total_tokens);
    out += buf;
    return out;
}

} // namespace qiraa
