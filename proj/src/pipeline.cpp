#include "classify_internal.hpp"
#include "qiraa/classify.hpp"
#include "qiraa/errors.hpp"

namespace qiraa {

PipelineConfig PipelineConfig::defaults() {
    PipelineConfig cfg;
    cfg.preprocess = PreprocessConfig::defaults();
    return cfg;
}

std::vector<std::vector<std::string>> corpus_terms(const Corpus& corpus,
                                                   const PipelineConfig& config) {
    std::vector<std::vector<std::string>> out(corpus.size());
    const int n = static_cast<int>(corpus.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (int i = 0; i < n; ++i)
        out[i] = extract_ngrams(preprocess(corpus.docs[i].text, config.preprocess),
                                config.ngrams);
    return out;
}

std::vector<std::vector<std::string>> corpus_terms_serial(const Corpus& corpus,
                                                          const PipelineConfig& config) {
    std::vector<std::vector<std::string>> out(corpus.size());
    for (size_t i = 0; i < corpus.size(); ++i)
        out[i] = extract_ngrams(preprocess(corpus.docs[i].text, config.preprocess),
                                config.ngrams);
    return out;
}

FeatureSpace fit_features(const std::vector<std::vector<std::string>>& train_terms,
                          const PipelineConfig& config) {
    FeatureSpace space;
    space.vocab = build_vocabulary(train_terms, config.vocab_options);
    if (config.representation == Representation::Tfidf)
        space.idf = tfidf_fit(space.vocab, config.idf_variant);
    return space;
}

SparseVector transform_terms(const std::vector<std::string>& terms,
                             const FeatureSpace& space,
                             const PipelineConfig& config) {
    SparseVector counts = count_vectorize(terms, space.vocab);
    if (config.representation == Representation::Tfidf)
        return tfidf_transform(counts, *space.idf);
    return counts;
}

std::vector<SparseVector> transform_corpus(
    const std::vector<std::vector<std::string>>& doc_terms,
    const FeatureSpace& space, const PipelineConfig& config) {
    std::vector<SparseVector> out(doc_terms.size());
    const int n = static_cast<int>(doc_terms.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (int i = 0; i < n; ++i) out[i] = transform_terms(doc_terms[i], space, config);
    return out;
}

std::vector<SparseVector> transform_corpus_serial(
    const std::vector<std::vector<std::string>>& doc_terms,
    const FeatureSpace& space, const PipelineConfig& config) {
    std::vector<SparseVector> out(doc_terms.size());
    for (size_t i = 0; i < doc_terms.size(); ++i)
        out[i] = transform_terms(doc_terms[i], space, config);
    return out;
}

TrainedModel train_model(const Corpus& train, const PipelineConfig& pipeline,
                         const TrainConfig& config) {
    if (train.empty()) throw DataError("training corpus is empty");
    std::vector<Label> y;
    y.reserve(train.size());
    for (const Document& doc : train.docs) {
        if (!doc.label) throw DataError("unlabeled document '" + doc.id + "'");
        y.push_back(*doc.label);
    }

    TrainedModel model;
    model.train_config = config;
    model.pipeline = pipeline;

    const auto terms = corpus_terms(train, pipeline);
    model.features = fit_features(terms, pipeline);
    const auto X = transform_corpus(terms, model.features, pipeline);
    model.core = train_classifier(X, y, config);
    return model;
}

SparseVector vectorize_document(const TrainedModel& model, const std::string& text) {
    const TokenSeq tokens = preprocess(text, model.pipeline.preprocess);
    return transform_terms(extract_ngrams(tokens, model.pipeline.ngrams),
                           model.features, model.pipeline);
}

Prediction predict_vector(const TrainedModel& model, const SparseVector& x) {
    return predict_core(model.core, x, model.features.vocab.size());
}

Prediction predict_text(const TrainedModel& model, const std::string& text) {
    return predict_vector(model, vectorize_document(model, text));
}

} // namespace qiraa
