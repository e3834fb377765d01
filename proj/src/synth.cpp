#include "qiraa/synth.hpp"

#include <cmath>
#include <unordered_set>

#include "qiraa/errors.hpp"
#include "qiraa/rng.hpp"
#include "qiraa/utf8.hpp"

namespace qiraa {

namespace {

// Letters that filter and normalize map to themselves, so generated tokens
// only ever change by affix stripping.
constexpr std::array<char32_t, 27> kLetterPool = {
    0x0627, 0x0628, 0x062A, 0x062B, 0x062C, 0x062D, 0x062E, 0x062F, 0x0630,
    0x0631, 0x0632, 0x0633, 0x0634, 0x0635, 0x0636, 0x0637, 0x0638, 0x0639,
    0x063A, 0x0641, 0x0642, 0x0643, 0x0644, 0x0645, 0x0646, 0x0647, 0x064A,
};

std::string random_word(SplitMix64& rng) {
    const size_t len = 3 + static_cast<size_t>(rng.below(6)); // 3..8 letters
    std::string w;
    for (size_t i = 0; i < len; ++i)
        utf8_append(w, kLetterPool[rng.below(kLetterPool.size())]);
    return w;
}

} // namespace

Corpus generate(const GenConfig& config) {
    for (int c = 0; c < kNumLabels; ++c) {
        if (config.docs_per_class[c] < 1)
            throw DataError("docs_per_class entries must be >= 1");
        if (config.vocab_size[c] < 1) throw DataError("vocab_size entries must be >= 1");
    }
    if (config.doc_len_min < 1 || config.doc_len_max < config.doc_len_min)
        throw DataError("document length range is invalid");
    if (!(config.overlap >= 0.0 && config.overlap <= 1.0))
        throw DataError("overlap must lie in [0, 1]");

    const PreprocessConfig pp = PreprocessConfig::defaults();
    std::unordered_set<std::string> used_stems;

    SplitMix64 vocab_rng(derive_seed(config.seed, 0));
    auto fresh_word = [&]() {
        // reject stop words and stem collisions so classes stay separable
        // after the pipeline runs
        for (;;) {
            std::string w = random_word(vocab_rng);
            if (pp.stopwords.count(w)) continue;
            std::string stem = light_stem(w, pp);
            if (!used_stems.insert(stem).second) continue;
            return w;
        }
    };

    // pools shared between adjacent levels
    std::array<std::vector<std::string>, kNumLabels - 1> shared;
    for (int c = 0; c + 1 < kNumLabels; ++c) {
        const int smaller = std::min(config.vocab_size[c], config.vocab_size[c + 1]);
        const int pool =
            static_cast<int>(std::llround(config.overlap / 2.0 * smaller));
        for (int i = 0; i < pool; ++i) shared[c].push_back(fresh_word());
    }

    std::array<std::vector<std::string>, kNumLabels> vocab;
    for (int c = 0; c < kNumLabels; ++c) {
        if (c > 0)
            vocab[c].insert(vocab[c].end(), shared[c - 1].begin(), shared[c - 1].end());
        if (c + 1 < kNumLabels)
            vocab[c].insert(vocab[c].end(), shared[c].begin(), shared[c].end());
        while (static_cast<int>(vocab[c].size()) < config.vocab_size[c])
            vocab[c].push_back(fresh_word());
    }

    Corpus corpus;
    const int len_range = config.doc_len_max - config.doc_len_min + 1;
    for (int c = 0; c < kNumLabels; ++c) {
        SplitMix64 rng(derive_seed(config.seed, 100 + static_cast<uint64_t>(c)));
        const Label label = static_cast<Label>(c);
        for (int k = 0; k < config.docs_per_class[c]; ++k) {
            const int len =
                config.doc_len_min + static_cast<int>(rng.below(len_range));
            std::string text;
            for (int t = 0; t < len; ++t) {
                if (t) text += ' ';
                text += vocab[c][rng.below(vocab[c].size())];
            }
            Document doc;
            doc.id = std::string("synth-") + label_name(label) + "-" +
                     std::to_string(k + 1);
            doc.text = std::move(text);
            doc.label = label;
            corpus.docs.push_back(std::move(doc));
        }
    }
    return corpus;
}

} // namespace qiraa
