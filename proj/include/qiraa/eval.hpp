#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qiraa/classify.hpp"
#include "qiraa/corpus.hpp"
#include "qiraa/label.hpp"

namespace qiraa {

/// Rows are gold labels, columns are predictions.
struct ConfusionMatrix {
    std::array<std::array<int64_t, kNumLabels>, kNumLabels> m{};

    int64_t total() const;
    int64_t trace() const;
    int64_t row_sum(int c) const;
    int64_t col_sum(int c) const;
};

ConfusionMatrix confusion(const std::vector<Label>& y_true,
                          const std::vector<Label>& y_pred);

struct CellConfig {
    Representation representation = Representation::Count;
    NgramConfig ngrams;
    Algorithm algorithm = Algorithm::MNB;
    uint64_t seed = 42;
};

/// "1", "2" or "1-2"; anything else renders as "min-max".
std::string ngram_key(const NgramConfig& config);
NgramConfig parse_ngram_key(const std::string& s);

struct EvalReport {
    double accuracy = 0.0;
    std::array<double, kNumLabels> precision{};
    std::array<double, kNumLabels> recall{};
    std::array<double, kNumLabels> f1{};
    std::array<int64_t, kNumLabels> support{};
    // unweighted means over classes with nonzero support
    double macro_precision = 0.0, macro_recall = 0.0, macro_f1 = 0.0;
    // support-weighted means, for the alternative averaging flag
    double weighted_precision = 0.0, weighted_recall = 0.0, weighted_f1 = 0.0;
    ConfusionMatrix cm;
    CellConfig config;
};

enum class Averaging { Macro, Weighted };

/// Accuracy, per-class precision/recall/F1 and their averages. A class that
/// is never predicted gets precision 0 (with a warning on stderr).
EvalReport metrics(const ConfusionMatrix& cm);

/// Train on `train`, score `test`; features are fitted on `train` only.
EvalReport evaluate_split(const Corpus& train, const Corpus& test,
                          const PipelineConfig& pipeline, const TrainConfig& config);

/// 80/20 stratified split (seeded), then evaluate_split.
EvalReport run_experiment(const Corpus& corpus, const CellConfig& cell,
                          uint64_t seed, double train_fraction = 0.8);

/// All 30 cells (2 representations x 3 n-gram settings x 5 algorithms) over
/// one shared split.
struct GridReport {
    uint64_t seed = 0;
    double train_fraction = 0.8;
    std::vector<EvalReport> cells; // fixed ordering: count tables then tfidf
};

GridReport run_grid(const Corpus& corpus, uint64_t seed,
                    double train_fraction = 0.8, bool parallel = true);

/// Canonical JSON with fixed key order; byte-identical across runs for the
/// same corpus and seed.
std::string grid_to_json(const GridReport& grid);
std::string report_to_json_string(const EvalReport& report);

/// Plain-text renderings.
std::string render_report(const EvalReport& report, Averaging avg = Averaging::Macro);
std::string render_grid_tables(const GridReport& grid, Averaging avg = Averaging::Macro);
std::string render_stats_table(const CorpusStats& stats);

} // namespace qiraa
