#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qiraa/label.hpp"
#include "qiraa/preprocess.hpp"

namespace qiraa {

struct Document {
    std::string id;
    std::string text;
    std::optional<Label> label;
};

/// An ordered document collection. Order is stable under load/save.
struct Corpus {
    std::vector<Document> docs;

    size_t size() const { return docs.size(); }
    bool empty() const { return docs.empty(); }
};

struct CorpusStats {
    std::array<int64_t, kNumLabels> doc_count{};
    std::array<int64_t, kNumLabels> token_count{};
    int64_t total_docs = 0;
    int64_t total_tokens = 0;
};

/// Read a JSONL corpus: one object per line with fields `text` (required),
/// `id` (optional, autogenerated as doc-<lineno> when absent) and `label`
/// (optional, one of easy|medium|difficult|very_difficult).
Corpus load_corpus(const std::string& path);

void save_corpus(const Corpus& corpus, const std::string& path);

/// Per-label document and token counts. Tokens are counted after the full
/// preprocessing pipeline unless raw_tokens is set, in which case plain
/// whitespace tokens are counted. Every document must be labeled.
CorpusStats corpus_stats(const Corpus& corpus, const PreprocessConfig& pipeline,
                         bool raw_tokens = false);

/// Deterministic stratified split. Within each label the documents are
/// shuffled by Fisher-Yates over SplitMix64(seed) and the first
/// round(train_fraction * n_label) go to train; the largest stratum is then
/// adjusted so the global train size equals floor(train_fraction * N).
/// A label with a single document always goes to train. Both halves keep
/// the original corpus order.
std::pair<Corpus, Corpus> split_corpus(const Corpus& corpus,
                                       double train_fraction, uint64_t seed);

} // namespace qiraa
