#pragma once

#include <array>
#include <cstdint>

#include "qiraa/corpus.hpp"

namespace qiraa {

/// Synthetic-corpus shape. Per-class document counts default to the
/// 67/88/93/149 distribution; harder levels get larger vocabularies, and
/// `overlap` controls what fraction of a class's vocabulary is shared with
/// the adjacent level (0 = pairwise disjoint class vocabularies).
struct GenConfig {
    std::array<int, kNumLabels> docs_per_class = {67, 88, 93, 149};
    int doc_len_min = 20;
    int doc_len_max = 60;
    std::array<int, kNumLabels> vocab_size = {40, 60, 80, 100};
    double overlap = 0.0;
    uint64_t seed = 42;
};

/// Deterministic generation: words are random strings of 3..8 Arabic letters
/// chosen from a normalization-stable pool, rejected if they collide with a
/// stop word or (after stemming) with any word already issued, so class
/// vocabularies stay separable even after the pipeline runs. Per-class
/// streams derive from the master seed.
Corpus generate(const GenConfig& config);

} // namespace qiraa
