#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qiraa/corpus.hpp"
#include "qiraa/features.hpp"
#include "qiraa/label.hpp"

namespace qiraa {

enum class Algorithm { MNB, BNB, LogReg, SVM, RF };
enum class Penalty { L1, L2 };
enum class SvmLoss { Hinge, SquaredHinge };
enum class Representation { Count, Tfidf };

const char* algorithm_key(Algorithm a);      // "mnb", "bnb", ...
const char* algorithm_display(Algorithm a);  // "Multinomial Naive Bayes", ...
Algorithm parse_algorithm(const std::string& s);
Representation parse_representation(const std::string& s);
const char* representation_key(Representation r);

struct TrainConfig {
    Algorithm algorithm = Algorithm::MNB;
    double alpha = 1.0;           // additive smoothing (naive Bayes)
    Penalty penalty = Penalty::L2;
    double C = 1.0;               // inverse regularization strength
    int max_iter = 0;             // 0 = per-algorithm default (logreg 1000, svm 1500)
    double tol = 1e-4;            // relative objective change stopping rule
    SvmLoss svm_loss = SvmLoss::Hinge;
    int n_trees = 100;
    int max_depth = 0;            // 0 = unlimited
    int mtry = 0;                 // features tried per split; 0 = floor(sqrt(V))
    uint64_t seed = 42;
};

/// Resolved max_iter for an algorithm (applies the 0 = default rule).
int resolve_max_iter(const TrainConfig& config);

// ---------------------------------------------------------------------------
// Per-algorithm parameter blocks
// ---------------------------------------------------------------------------

struct MnbParams {
    std::vector<double> log_prior;                // per class
    std::vector<std::vector<double>> log_likelihood; // [class][feature]
    double alpha = 1.0;
};

struct BnbParams {
    std::vector<double> log_prior;
    std::vector<std::vector<double>> log_present; // ln P(t present | c)
    std::vector<std::vector<double>> log_absent;  // ln (1 - P(t present | c))
    double alpha = 1.0;
};

struct LinearParams { // one-vs-rest heads
    std::vector<std::vector<double>> weights; // [class][feature]
    std::vector<double> bias;                 // per class, unregularized
    bool logistic = true;                     // false = margin scores (SVM)
};

struct TreeNode {
    int32_t feature = -1; // -1 marks a leaf
    double threshold = 0.0;
    int32_t left = -1;  // index of the x <= threshold child
    int32_t right = -1;
    std::array<int64_t, kNumLabels> counts{}; // class counts of reaching samples
};

struct Tree {
    std::vector<TreeNode> nodes; // node 0 is the root
};

struct ForestParams {
    std::vector<Tree> trees;
};

/// A trained classifier over a fixed feature space: which labels were seen
/// in training (canonical order) plus the algorithm parameters.
struct ClassifierCore {
    Algorithm algorithm = Algorithm::MNB;
    std::vector<Label> classes;
    std::variant<MnbParams, BnbParams, LinearParams, ForestParams> params;
};

struct Prediction {
    Label label;
    /// Per-label scores: normalized log-probabilities for naive Bayes and
    /// logistic regression, decision margins for SVM, vote fractions for the
    /// forest. Labels absent from training score -infinity.
    std::array<double, kNumLabels> scores;
};

// ---------------------------------------------------------------------------
// Training (feature-vector level)
// ---------------------------------------------------------------------------

MnbParams train_mnb(const std::vector<SparseVector>& X, const std::vector<Label>& y,
                    double alpha, std::vector<Label>& classes_out);
BnbParams train_bnb(const std::vector<SparseVector>& X, const std::vector<Label>& y,
                    double alpha, std::vector<Label>& classes_out);
LinearParams train_logreg(const std::vector<SparseVector>& X,
                          const std::vector<Label>& y, const TrainConfig& config,
                          std::vector<Label>& classes_out);
LinearParams train_svm(const std::vector<SparseVector>& X,
                       const std::vector<Label>& y, const TrainConfig& config,
                       std::vector<Label>& classes_out);
ForestParams train_rf(const std::vector<SparseVector>& X, const std::vector<Label>& y,
                      const TrainConfig& config, std::vector<Label>& classes_out);
/// Plain-loop reference for the tree ensemble; bitwise-identical to train_rf.
ForestParams train_rf_serial(const std::vector<SparseVector>& X,
                             const std::vector<Label>& y, const TrainConfig& config,
                             std::vector<Label>& classes_out);

ClassifierCore train_classifier(const std::vector<SparseVector>& X,
                                const std::vector<Label>& y,
                                const TrainConfig& config);

/// Score a vector. Throws std::invalid_argument on dimensionality mismatch.
Prediction predict_core(const ClassifierCore& core, const SparseVector& x,
                        uint64_t expected_dim);

// ---------------------------------------------------------------------------
// Objectives and (sub)gradients, exposed for optimization and for
// finite-difference checks.
// ---------------------------------------------------------------------------

namespace linear_detail {

/// sum_i log(1 + exp(-y_i (w.x_i + b))) + (1/C) R(w),
/// R = |w|_1 or 0.5 |w|_2^2; bias unregularized; y in {-1,+1}.
double logreg_objective(const std::vector<double>& w, double b,
                        const std::vector<SparseVector>& X,
                        const std::vector<int>& y, Penalty penalty, double C);
void logreg_gradient(const std::vector<double>& w, double b,
                     const std::vector<SparseVector>& X, const std::vector<int>& y,
                     Penalty penalty, double C, std::vector<double>& grad_w,
                     double& grad_b);

/// sum_i loss(y_i (w.x_i + b)) + (1/C) R(w); hinge or squared hinge.
double svm_objective(const std::vector<double>& w, double b,
                     const std::vector<SparseVector>& X, const std::vector<int>& y,
                     Penalty penalty, double C, SvmLoss loss);
void svm_subgradient(const std::vector<double>& w, double b,
                     const std::vector<SparseVector>& X, const std::vector<int>& y,
                     Penalty penalty, double C, SvmLoss loss,
                     std::vector<double>& grad_w, double& grad_b);

} // namespace linear_detail

// ---------------------------------------------------------------------------
// Document-level pipeline: preprocessing + featurization + classifier
// ---------------------------------------------------------------------------

struct PipelineConfig {
    PreprocessConfig preprocess;
    NgramConfig ngrams;
    Representation representation = Representation::Count;
    IdfVariant idf_variant = IdfVariant::Smooth;
    VocabOptions vocab_options;

    static PipelineConfig defaults();
};

/// Vocabulary (and idf table, for the tf-idf representation) fitted on the
/// training split only.
struct FeatureSpace {
    Vocabulary vocab;
    std::optional<IdfModel> idf;
};

/// Terms per document: preprocess + n-gram extraction. OpenMP across
/// documents; the _serial variant is the plain-loop reference.
std::vector<std::vector<std::string>> corpus_terms(const Corpus& corpus,
                                                   const PipelineConfig& config);
std::vector<std::vector<std::string>> corpus_terms_serial(const Corpus& corpus,
                                                          const PipelineConfig& config);

FeatureSpace fit_features(const std::vector<std::vector<std::string>>& train_terms,
                          const PipelineConfig& config);

SparseVector transform_terms(const std::vector<std::string>& terms,
                             const FeatureSpace& space,
                             const PipelineConfig& config);

/// Vectorize a whole corpus against a fitted feature space. OpenMP across
/// documents; _serial is the reference loop.
std::vector<SparseVector> transform_corpus(
    const std::vector<std::vector<std::string>>& doc_terms,
    const FeatureSpace& space, const PipelineConfig& config);
std::vector<SparseVector> transform_corpus_serial(
    const std::vector<std::vector<std::string>>& doc_terms,
    const FeatureSpace& space, const PipelineConfig& config);

/// Everything needed to reproduce the input space at predict time travels
/// with the model.
struct TrainedModel {
    TrainConfig train_config;
    PipelineConfig pipeline;
    FeatureSpace features;
    ClassifierCore core;
};

/// Fit features on the given (fully labeled) corpus and train the
/// configured classifier on it.
TrainedModel train_model(const Corpus& train, const PipelineConfig& pipeline,
                         const TrainConfig& config);

SparseVector vectorize_document(const TrainedModel& model, const std::string& text);
Prediction predict_vector(const TrainedModel& model, const SparseVector& x);
Prediction predict_text(const TrainedModel& model, const std::string& text);

// ---------------------------------------------------------------------------
// Model file I/O: versioned JSON container; round-trips bit-exactly for
// prediction purposes.
// ---------------------------------------------------------------------------

inline constexpr int kModelFormatVersion = 1;

void save_model(const TrainedModel& model, const std::string& path);
TrainedModel load_model(const std::string& path);

/// Canonical JSON serialization (used by save_model and by tests that
/// compare models structurally).
std::string model_to_json(const TrainedModel& model);
TrainedModel model_from_json(const std::string& text);

/// FNV-1a hash of the canonical pipeline serialization; stored in the model
/// file so configuration skew is detectable at a glance.
uint64_t pipeline_config_hash(const PipelineConfig& config);

} // namespace qiraa
