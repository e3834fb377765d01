#include "qiraa/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "qiraa/errors.hpp"
#include "qiraa/rng.hpp"

namespace qiraa {

using nlohmann::ordered_json;

Corpus load_corpus(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open corpus file: " + path);

    Corpus corpus;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        ordered_json rec;
        try {
            rec = ordered_json::parse(line); // also rejects non-UTF-8 bytes
        } catch (const ordered_json::exception& e) {
            throw DataError("malformed corpus line " + std::to_string(lineno) +
                            ": " + e.what());
        }
        if (!rec.is_object())
            throw DataError("malformed corpus line " + std::to_string(lineno) +
                            ": expected a JSON object");
        if (!rec.contains("text") || !rec["text"].is_string())
            throw DataError("malformed corpus line " + std::to_string(lineno) +
                            ": missing string field 'text'");

        Document doc;
        doc.text = rec["text"].get<std::string>();
        if (rec.contains("id") && !rec["id"].is_null()) {
            if (!rec["id"].is_string())
                throw DataError("malformed corpus line " + std::to_string(lineno) +
                                ": 'id' must be a string");
            doc.id = rec["id"].get<std::string>();
        } else {
            doc.id = "doc-" + std::to_string(lineno);
        }
        if (rec.contains("label") && !rec["label"].is_null()) {
            if (!rec["label"].is_string())
                throw DataError("malformed corpus line " + std::to_string(lineno) +
                                ": 'label' must be a string");
            try {
                doc.label = parse_label(rec["label"].get<std::string>());
            } catch (const DataError& e) {
                throw DataError(std::string(e.what()) + " at line " +
                                std::to_string(lineno));
            }
        }
        if (!seen_ids.insert(doc.id).second)
            throw DataError("duplicate document id '" + doc.id + "' at line " +
                            std::to_string(lineno));
        corpus.docs.push_back(std::move(doc));
    }
    return corpus;
}

void save_corpus(const Corpus& corpus, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write corpus file: " + path);
    for (const Document& doc : corpus.docs) {
        ordered_json rec;
        rec["id"] = doc.id;
        rec["text"] = doc.text;
        if (doc.label) rec["label"] = label_name(*doc.label);
        out << rec.dump() << '\n';
    }
    if (!out) throw DataError("failed writing corpus file: " + path);
}

CorpusStats corpus_stats(const Corpus& corpus, const PreprocessConfig& pipeline,
                         bool raw_tokens) {
    CorpusStats stats;
    for (const Document& doc : corpus.docs) {
        if (!doc.label)
            throw DataError("unlabeled document '" + doc.id + "'");
        const int c = label_index(*doc.label);
        const size_t tokens = raw_tokens ? tokenize(doc.text).size()
                                         : preprocess(doc.text, pipeline).size();
        stats.doc_count[c] += 1;
        stats.token_count[c] += static_cast<int64_t>(tokens);
    }
    for (int c = 0; c < kNumLabels; ++c) {
        stats.total_docs += stats.doc_count[c];
        stats.total_tokens += stats.token_count[c];
    }
    return stats;
}

std::pair<Corpus, Corpus> split_corpus(const Corpus& corpus,
                                       double train_fraction, uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw DataError("train fraction must lie strictly between 0 and 1");

    std::array<std::vector<size_t>, kNumLabels> strata;
    for (size_t i = 0; i < corpus.docs.size(); ++i) {
        const Document& doc = corpus.docs[i];
        if (!doc.label)
            throw DataError("unlabeled document '" + doc.id + "'");
        strata[label_index(*doc.label)].push_back(i);
    }

    const int64_t total = static_cast<int64_t>(corpus.docs.size());
    const int64_t train_target =
        static_cast<int64_t>(std::floor(train_fraction * static_cast<double>(total)));

    std::array<int64_t, kNumLabels> take{};
    int64_t take_sum = 0;
    for (int c = 0; c < kNumLabels; ++c) {
        const int64_t n = static_cast<int64_t>(strata[c].size());
        int64_t t = std::llround(train_fraction * static_cast<double>(n));
        if (n == 1) t = 1; // a lone document is training data
        t = std::clamp<int64_t>(t, 0, n);
        take[c] = t;
        take_sum += t;
    }
    // Per-stratum rounding can drift off the global target; absorb the
    // difference in the largest stratum (lowest label index on ties).
    if (take_sum != train_target) {
        int big = 0;
        for (int c = 1; c < kNumLabels; ++c)
            if (strata[c].size() > strata[big].size()) big = c;
        take[big] = std::clamp<int64_t>(take[big] + (train_target - take_sum), 0,
                                        static_cast<int64_t>(strata[big].size()));
    }

    // One PRNG stream; strata consumed in canonical label order.
    SplitMix64 rng(seed);
    std::vector<char> in_train(corpus.docs.size(), 0);
    for (int c = 0; c < kNumLabels; ++c) {
        std::vector<size_t> idx = strata[c];
        fisher_yates(idx, rng);
        for (int64_t k = 0; k < take[c]; ++k) in_train[idx[k]] = 1;
    }

    Corpus train, test;
    for (size_t i = 0; i < corpus.docs.size(); ++i)
        (in_train[i] ? train : test).docs.push_back(corpus.docs[i]);
    return {std::move(train), std::move(test)};
}

} // namespace qiraa
