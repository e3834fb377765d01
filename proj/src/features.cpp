#include "qiraa/features.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qiraa/errors.hpp"

namespace qiraa {

std::vector<std::string> extract_ngrams(const TokenSeq& tokens,
                                        const NgramConfig& config) {
    std::vector<std::string> out;
    if (config.n_min < 1 || config.n_max < config.n_min) return out;
    const size_t len = tokens.size();
    for (int n = config.n_min; n <= config.n_max; ++n) {
        if (static_cast<size_t>(n) > len) break;
        for (size_t i = 0; i + n <= len; ++i) {
            if (n == 1) {
                out.push_back(tokens[i]);
                continue;
            }
            std::string gram = tokens[i];
            for (int k = 1; k < n; ++k) {
                gram += ' ';
                gram += tokens[i + k];
            }
            out.push_back(std::move(gram));
        }
    }
    return out;
}

Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& doc_terms,
                            const VocabOptions& options) {
    if (doc_terms.empty())
        throw DataError("cannot build a vocabulary from an empty training set");

    Vocabulary vocab;
    vocab.doc_count = doc_terms.size();
    std::vector<uint32_t> last_doc; // per term: last document that counted it
    for (size_t d = 0; d < doc_terms.size(); ++d) {
        for (const std::string& term : doc_terms[d]) {
            auto [it, inserted] =
                vocab.index.try_emplace(term, static_cast<uint32_t>(vocab.terms.size()));
            if (inserted) {
                vocab.terms.push_back(term);
                vocab.df.push_back(0);
                last_doc.push_back(UINT32_MAX);
            }
            const uint32_t id = it->second;
            if (last_doc[id] != d) {
                last_doc[id] = static_cast<uint32_t>(d);
                vocab.df[id] += 1;
            }
        }
    }

    const bool prune_df = options.min_df > 1;
    const bool prune_top =
        options.max_features > 0 && options.max_features < vocab.terms.size();
    if (!prune_df && !prune_top) return vocab;

    std::vector<uint32_t> keep;
    keep.reserve(vocab.terms.size());
    for (uint32_t id = 0; id < vocab.terms.size(); ++id)
        if (vocab.df[id] >= options.min_df) keep.push_back(id);
    if (options.max_features > 0 && keep.size() > options.max_features) {
        // highest df wins, first-seen order breaks ties
        std::stable_sort(keep.begin(), keep.end(), [&](uint32_t a, uint32_t b) {
            return vocab.df[a] > vocab.df[b];
        });
        keep.resize(options.max_features);
        std::sort(keep.begin(), keep.end());
    }

    Vocabulary pruned;
    pruned.doc_count = vocab.doc_count;
    pruned.terms.reserve(keep.size());
    pruned.df.reserve(keep.size());
    for (uint32_t id : keep) {
        pruned.index.emplace(vocab.terms[id],
                             static_cast<uint32_t>(pruned.terms.size()));
        pruned.terms.push_back(vocab.terms[id]);
        pruned.df.push_back(vocab.df[id]);
    }
    return pruned;
}

double SparseVector::at(uint32_t feature) const {
    auto it = std::lower_bound(idx.begin(), idx.end(), feature);
    if (it == idx.end() || *it != feature) return 0.0;
    return val[static_cast<size_t>(it - idx.begin())];
}

double l2_norm(const SparseVector& v) {
    double ss = 0.0;
    for (double x : v.val) ss += x * x;
    return std::sqrt(ss);
}

SparseVector count_vectorize(const std::vector<std::string>& terms,
                             const Vocabulary& vocab) {
    std::unordered_map<uint32_t, double> counts;
    for (const std::string& term : terms) {
        if (auto id = vocab.lookup(term)) counts[*id] += 1.0;
    }
    SparseVector out;
    out.dim = vocab.size();
    out.idx.reserve(counts.size());
    for (const auto& [id, _] : counts) out.idx.push_back(id);
    std::sort(out.idx.begin(), out.idx.end());
    out.val.reserve(out.idx.size());
    for (uint32_t id : out.idx) out.val.push_back(counts[id]);
    return out;
}

IdfModel tfidf_fit(const Vocabulary& vocab, IdfVariant variant) {
    IdfModel model;
    model.doc_count = vocab.doc_count;
    model.variant = variant;
    model.idf.resize(vocab.size());
    const double n = static_cast<double>(vocab.doc_count);
    for (size_t t = 0; t < vocab.size(); ++t) {
        const double df = static_cast<double>(vocab.df[t]);
        model.idf[t] = variant == IdfVariant::Smooth
                           ? std::log((1.0 + n) / (1.0 + df)) + 1.0
                           : std::log(n / df);
    }
    return model;
}

SparseVector tfidf_transform(const SparseVector& counts, const IdfModel& idf) {
    if (counts.dim != idf.idf.size())
        throw std::invalid_argument("tfidf_transform: dimensionality mismatch");
    SparseVector out;
    out.dim = counts.dim;
    double ss = 0.0;
    for (size_t k = 0; k < counts.idx.size(); ++k) {
        const double w = counts.val[k] * idf.idf[counts.idx[k]];
        if (w == 0.0) continue; // plain idf can zero out ubiquitous terms
        out.idx.push_back(counts.idx[k]);
        out.val.push_back(w);
        ss += w * w;
    }
    if (ss > 0.0) {
        const double inv = 1.0 / std::sqrt(ss);
        for (double& w : out.val) w *= inv;
    }
    return out;
}

} // namespace qiraa
