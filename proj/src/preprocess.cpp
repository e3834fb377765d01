#include "qiraa/preprocess.hpp"

#include <algorithm>
#include <fstream>

#include "qiraa/errors.hpp"
#include "qiraa/utf8.hpp"

namespace qiraa {

bool is_unicode_space(char32_t cp) {
    switch (cp) {
        case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
        case 0x85: case 0xA0: case 0x1680:
        case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

bool is_arabic_letter(char32_t cp) {
    // Base Arabic block letters. The hamza row up to U+063A, the main letter
    // row up to U+064A, and alif wasla (which normalization folds to alif).
    // Tashkeel (U+064B..U+0652), tatweel (U+0640) and Arabic-Indic digits
    // fall outside these ranges on purpose.
    return (cp >= 0x0621 && cp <= 0x063A) || (cp >= 0x0641 && cp <= 0x064A) ||
           cp == 0x0671;
}

TokenSeq tokenize(std::string_view text) {
    TokenSeq out;
    const std::u32string cps = utf8_decode(text);
    std::u32string cur;
    for (char32_t cp : cps) {
        if (is_unicode_space(cp)) {
            if (!cur.empty()) {
                out.push_back(utf8_encode(cur));
                cur.clear();
            }
        } else {
            cur.push_back(cp);
        }
    }
    if (!cur.empty()) out.push_back(utf8_encode(cur));
    return out;
}

namespace {

bool looks_like_url(std::string_view token) {
    return token.find("://") != std::string_view::npos ||
           token.substr(0, 4) == "www.";
}

} // namespace

TokenSeq filter_tokens(const TokenSeq& tokens) {
    TokenSeq out;
    out.reserve(tokens.size());
    for (const std::string& tok : tokens) {
        if (looks_like_url(tok)) continue;
        const std::u32string cps = utf8_decode(tok);
        std::u32string kept;
        for (char32_t cp : cps)
            if (is_arabic_letter(cp)) kept.push_back(cp);
        if (kept.size() <= 1) continue; // empty or a single letter
        out.push_back(utf8_encode(kept));
    }
    return out;
}

std::string normalize(std::string_view token, bool fold_teh_marbuta) {
    std::u32string cps = utf8_decode(token);
    for (char32_t& cp : cps) {
        switch (cp) {
            case 0x0622: // alif madda
            case 0x0623: // alif with hamza above
            case 0x0625: // alif with hamza below
            case 0x0671: // alif wasla
                cp = 0x0627; // bare alif
                break;
            case 0x0649: // alif maqsura
                cp = 0x064A; // yeh
                break;
            case 0x0629: // teh marbuta
                if (fold_teh_marbuta) cp = 0x0647; // heh
                break;
            default:
                break;
        }
    }
    return utf8_encode(cps);
}

TokenSeq remove_stopwords(const TokenSeq& tokens,
                          const std::unordered_set<std::string>& stoplist) {
    TokenSeq out;
    out.reserve(tokens.size());
    for (const std::string& tok : tokens)
        if (stoplist.find(tok) == stoplist.end()) out.push_back(tok);
    return out;
}

std::string light_stem(std::string_view token, const PreprocessConfig& config) {
    const size_t min_len = config.min_stem_length < 0
                               ? 0
                               : static_cast<size_t>(config.min_stem_length);
    std::string_view stem = token;
    size_t stem_len = utf8_length(stem);

    for (const std::string& p : config.prefixes) {
        if (p.empty() || stem.size() <= p.size()) continue;
        if (stem.substr(0, p.size()) != p) continue;
        const size_t plen = utf8_length(p);
        if (stem_len - plen < min_len) continue; // refuse, try shorter prefixes
        stem.remove_prefix(p.size());
        stem_len -= plen;
        break; // at most one prefix
    }
    for (const std::string& s : config.suffixes) {
        if (s.empty() || stem.size() <= s.size()) continue;
        if (stem.substr(stem.size() - s.size()) != s) continue;
        const size_t slen = utf8_length(s);
        if (stem_len - slen < min_len) continue;
        stem.remove_suffix(s.size());
        stem_len -= slen;
        break; // at most one suffix
    }
    return std::string(stem);
}

TokenSeq preprocess(std::string_view text, const PreprocessConfig& config) {
    TokenSeq tokens = tokenize(text);
    if (config.filter_stage) tokens = filter_tokens(tokens);
    if (config.normalize_stage)
        for (std::string& tok : tokens) tok = normalize(tok, config.fold_teh_marbuta);
    if (config.stopword_stage) tokens = remove_stopwords(tokens, config.stopwords);
    if (config.stem_stage)
        for (std::string& tok : tokens) tok = light_stem(tok, config);
    return tokens;
}

std::vector<std::string> load_wordlist(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open word list file: " + path);
    std::vector<std::string> entries;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim ASCII whitespace
        size_t b = line.find_first_not_of(" \t");
        size_t e = line.find_last_not_of(" \t");
        if (b == std::string::npos) continue;
        std::string entry = line.substr(b, e - b + 1);
        if (!utf8_valid(entry))
            throw DataError(path + ": invalid UTF-8 at line " + std::to_string(lineno));
        entries.push_back(std::move(entry));
    }
    return entries;
}

void sort_affixes_longest_first(std::vector<std::string>& affixes) {
    std::stable_sort(affixes.begin(), affixes.end(),
                     [](const std::string& a, const std::string& b) {
                         return utf8_length(a) > utf8_length(b);
                     });
}

std::vector<std::string> default_prefixes() {
    std::vector<std::string> p = {"وال", "بال", "كال", "فال", "لل",
                                  "ال",  "و",   "ف",   "ب",   "ك", "ل"};
    sort_affixes_longest_first(p);
    return p;
}

std::vector<std::string> default_suffixes() {
    std::vector<std::string> s = {"ها", "ان", "ات", "ون", "ين", "يه",
                                  "ية", "ه",  "ة",  "ي",  "ا"};
    sort_affixes_longest_first(s);
    return s;
}

PreprocessConfig PreprocessConfig::defaults() {
    PreprocessConfig cfg;
    for (const std::string& w : default_stopwords())
        cfg.stopwords.insert(normalize(w));
    cfg.prefixes = default_prefixes();
    cfg.suffixes = default_suffixes();
    return cfg;
}

} // namespace qiraa
