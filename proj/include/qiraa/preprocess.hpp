#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace qiraa {

using TokenSeq = std::vector<std::string>;

/// Configuration of the five-stage cleanup pipeline:
/// tokenize -> filter -> normalize -> stop-word removal -> light stemming.
/// Instances are immutable in practice: build one, share it across threads.
struct PreprocessConfig {
    /// Stop-word entries, stored in normalized form so membership tests are
    /// well-defined against normalized tokens.
    std::unordered_set<std::string> stopwords;

    /// Affix tables, longest-first. Stripping takes at most one prefix and
    /// one suffix, never an infix.
    std::vector<std::string> prefixes;
    std::vector<std::string> suffixes;

    /// A strip is refused when the remainder would be shorter than this
    /// (measured in codepoints).
    int min_stem_length = 3;

    /// Fold teh marbuta into heh during normalization. Off by default; it
    /// interacts with the suffix table, so it is opt-in.
    bool fold_teh_marbuta = false;

    // Per-stage switches (tokenizing always runs).
    bool filter_stage = true;
    bool normalize_stage = true;
    bool stopword_stage = true;
    bool stem_stage = true;

    /// Shipped defaults: ~160 MSA function words, light-stemming affix
    /// tables, min stem length 3.
    static PreprocessConfig defaults();
};

/// Split on Unicode whitespace. Never produces empty tokens.
TokenSeq tokenize(std::string_view text);

/// Strip every codepoint outside the Arabic letter ranges (this removes
/// punctuation, digits in either numbering system, Latin letters, symbols,
/// tashkeel U+064B..U+0652 and tatweel U+0640). Tokens that look like URLs
/// ("://" anywhere, or a leading "www.") are dropped whole, as are tokens
/// that end up empty or one letter long.
TokenSeq filter_tokens(const TokenSeq& tokens);

/// Character unification: alif variants (U+0622 U+0623 U+0625 U+0671) to bare
/// alif, alif maqsura to yeh, and optionally teh marbuta to heh. Idempotent.
std::string normalize(std::string_view token, bool fold_teh_marbuta = false);

TokenSeq remove_stopwords(const TokenSeq& tokens,
                          const std::unordered_set<std::string>& stoplist);

/// Light stemming: strip at most one longest-matching prefix, then at most
/// one longest-matching suffix. Each strip is refused if the remainder would
/// have fewer than min_stem_length codepoints. Infixes are never touched.
std::string light_stem(std::string_view token, const PreprocessConfig& config);

/// Run the five stages in order; exactly the composition of the functions
/// above, so pipeline output can be checked against manual stage chaining.
TokenSeq preprocess(std::string_view text, const PreprocessConfig& config);

/// One entry per line, '#' starts a comment, blank lines ignored. UTF-8.
std::vector<std::string> load_wordlist(const std::string& path);

/// The shipped stop-word list (already normalized).
const std::vector<std::string>& default_stopwords();

/// Default affix tables (light-stemming convention).
std::vector<std::string> default_prefixes();
std::vector<std::string> default_suffixes();

/// Order affix tables longest-first (codepoint length, stable).
void sort_affixes_longest_first(std::vector<std::string>& affixes);

bool is_arabic_letter(char32_t cp);
bool is_unicode_space(char32_t cp);

} // namespace qiraa
