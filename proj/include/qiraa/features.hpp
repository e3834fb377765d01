#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qiraa/preprocess.hpp"

namespace qiraa {

/// Word n-gram window sizes. (1,1), (2,2) and (1,2) match the reported
/// experiments; larger windows work but are off the beaten path.
struct NgramConfig {
    int n_min = 1;
    int n_max = 1;
};

/// Constituent words of an n-gram are joined with a single space.
std::vector<std::string> extract_ngrams(const TokenSeq& tokens,
                                        const NgramConfig& config);

/// Term <-> dense index bijection with document frequencies. Indices are
/// assigned in first-seen order over the training documents, so vocabulary
/// construction is deterministic.
struct Vocabulary {
    std::unordered_map<std::string, uint32_t> index;
    std::vector<std::string> terms; // index -> term
    std::vector<uint32_t> df;       // index -> document frequency
    uint64_t doc_count = 0;         // N

    size_t size() const { return terms.size(); }

    std::optional<uint32_t> lookup(const std::string& term) const {
        auto it = index.find(term);
        if (it == index.end()) return std::nullopt;
        return it->second;
    }
};

struct VocabOptions {
    uint32_t min_df = 1;       // keep terms occurring in at least this many docs
    uint32_t max_features = 0; // 0 = unlimited; else keep highest-df terms
};

/// Build the vocabulary from per-document term lists (training split only).
Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& doc_terms,
                            const VocabOptions& options = {});

/// Sparse vector over a fixed vocabulary: strictly increasing indices with
/// parallel weights.
struct SparseVector {
    std::vector<uint32_t> idx;
    std::vector<double> val;
    uint64_t dim = 0;

    size_t nnz() const { return idx.size(); }
    bool empty() const { return idx.empty(); }

    /// Value at a feature index (0 when absent); binary search.
    double at(uint32_t feature) const;
};

double l2_norm(const SparseVector& v);

/// Raw occurrence counts; out-of-vocabulary terms are silently ignored.
SparseVector count_vectorize(const std::vector<std::string>& terms,
                             const Vocabulary& vocab);

enum class IdfVariant {
    Smooth, // ln((1+N)/(1+df)) + 1, strictly positive
    Plain,  // ln(N/df)
};

struct IdfModel {
    std::vector<double> idf; // per feature index
    uint64_t doc_count = 0;
    IdfVariant variant = IdfVariant::Smooth;
};

IdfModel tfidf_fit(const Vocabulary& vocab, IdfVariant variant = IdfVariant::Smooth);

/// weight = count * idf, then the whole vector is L2-normalized.
/// An empty input stays empty.
SparseVector tfidf_transform(const SparseVector& counts, const IdfModel& idf);

} // namespace qiraa
