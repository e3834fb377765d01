#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "qiraa/errors.hpp"
#include "qiraa/features.hpp"
#include "qiraa/rng.hpp"

using namespace qiraa;

namespace {

std::multiset<std::string> as_multiset(const std::vector<std::string>& v) {
    return {v.begin(), v.end()};
}

} // namespace

TEST_CASE("extract_ngrams emits windows in document order") {
    const TokenSeq abc = {"a", "b", "c"};
    CHECK(extract_ngrams(abc, {1, 2}) ==
          std::vector<std::string>{"a", "b", "c", "a b", "b c"});
    CHECK(extract_ngrams({"a"}, {2, 2}) == std::vector<std::string>{});
    CHECK(extract_ngrams({}, {1, 2}) == std::vector<std::string>{});
}

TEST_CASE("extract_ngrams window-count identity for short inputs") {
    TokenSeq toks;
    for (int len = 0; len <= 6; ++len) {
        for (int n = 1; n <= 3; ++n) {
            const auto grams = extract_ngrams(toks, {n, n});
            CHECK(static_cast<int>(grams.size()) == std::max(0, len - n + 1));
        }
        // multiset identity: (1,2) == (1,1) + (2,2)
        auto combined = extract_ngrams(toks, {1, 1});
        const auto bi = extract_ngrams(toks, {2, 2});
        combined.insert(combined.end(), bi.begin(), bi.end());
        CHECK(as_multiset(extract_ngrams(toks, {1, 2})) == as_multiset(combined));
        toks.push_back("t" + std::to_string(len));
    }
}

TEST_CASE("build_vocabulary assigns first-seen indices and df") {
    const std::vector<std::vector<std::string>> docs = {{"a", "b"}, {"b", "c"}};
    const Vocabulary v = build_vocabulary(docs);
    REQUIRE(v.size() == 3);
    CHECK(v.lookup("a") == 0);
    CHECK(v.lookup("b") == 1);
    CHECK(v.lookup("c") == 2);
    CHECK(v.df[0] == 1);
    CHECK(v.df[1] == 2);
    CHECK(v.df[2] == 1);
    CHECK(v.doc_count == 2);

    const Vocabulary dup = build_vocabulary({{"a"}, {"a"}});
    REQUIRE(dup.size() == 1);
    CHECK(dup.df[0] == 2);

    VocabOptions opts;
    opts.min_df = 2;
    const Vocabulary pruned = build_vocabulary(docs, opts);
    REQUIRE(pruned.size() == 1);
    CHECK(pruned.terms[0] == "b");
    CHECK(pruned.lookup("b") == 0);

    CHECK_THROWS_AS(build_vocabulary({}), DataError);
}

TEST_CASE("build_vocabulary max_features keeps highest-df terms") {
    const std::vector<std::vector<std::string>> docs = {
        {"a", "b", "c"}, {"b", "c"}, {"c"}};
    VocabOptions opts;
    opts.max_features = 2;
    const Vocabulary v = build_vocabulary(docs, opts);
    REQUIRE(v.size() == 2);
    CHECK(v.lookup("b").has_value());
    CHECK(v.lookup("c").has_value());
    CHECK(!v.lookup("a").has_value());
}

TEST_CASE("count_vectorize counts occurrences and ignores OOV") {
    Vocabulary v = build_vocabulary({{"a", "b"}});
    const SparseVector x = count_vectorize({"a", "a", "b", "z"}, v);
    CHECK(x.idx == std::vector<uint32_t>{0, 1});
    CHECK(x.val == std::vector<double>{2.0, 1.0});
    CHECK(x.dim == 2);

    CHECK(count_vectorize({}, v).empty());
    CHECK(count_vectorize({"z", "q"}, v).empty());
}

TEST_CASE("count weights sum to the number of in-vocabulary terms") {
    Vocabulary v = build_vocabulary({{"a", "b", "c"}});
    SplitMix64 rng(11);
    for (int round = 0; round < 200; ++round) {
        std::vector<std::string> terms;
        size_t oov = 0;
        const size_t len = rng.below(30);
        for (size_t i = 0; i < len; ++i) {
            switch (rng.below(4)) {
                case 0: terms.push_back("a"); break;
                case 1: terms.push_back("b"); break;
                case 2: terms.push_back("c"); break;
                default:
                    terms.push_back("oov");
                    ++oov;
            }
        }
        const SparseVector x = count_vectorize(terms, v);
        double sum = 0;
        for (double w : x.val) sum += w;
        CHECK(sum == doctest::Approx(static_cast<double>(terms.size() - oov)));
        CHECK(sum <= static_cast<double>(terms.size()));
    }
}

TEST_CASE("tfidf_fit computes the smoothed idf") {
    // N=2: df=2 -> ln(3/3)+1 = 1; df=1 -> ln(3/2)+1
    const Vocabulary v = build_vocabulary({{"a", "b"}, {"a"}});
    const IdfModel idf = tfidf_fit(v);
    REQUIRE(idf.idf.size() == 2);
    CHECK(idf.idf[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(idf.idf[1] == doctest::Approx(std::log(1.5) + 1.0).epsilon(1e-12));

    // single-document degenerate case: idf = ln(2/2)+1 = 1
    const Vocabulary v1 = build_vocabulary({{"a"}});
    CHECK(tfidf_fit(v1).idf[0] == doctest::Approx(1.0).epsilon(1e-12));

    // plain variant
    const IdfModel plain = tfidf_fit(v, IdfVariant::Plain);
    CHECK(plain.idf[0] == doctest::Approx(0.0));
    CHECK(plain.idf[1] == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("tfidf_transform weights and normalizes") {
    const Vocabulary v = build_vocabulary({{"a", "b"}, {"a"}});
    const IdfModel idf = tfidf_fit(v);

    SparseVector counts;
    counts.dim = 2;
    counts.idx = {0, 1};
    counts.val = {2.0, 1.0};
    const SparseVector out = tfidf_transform(counts, idf);

    // derived by the formula: pre-norm (2*1.0, 1*(ln(3/2)+1)), then unit norm
    const double wb = std::log(1.5) + 1.0;
    const double norm = std::sqrt(4.0 + wb * wb);
    REQUIRE(out.idx == std::vector<uint32_t>{0, 1});
    CHECK(out.val[0] == doctest::Approx(2.0 / norm).epsilon(1e-12));
    CHECK(out.val[1] == doctest::Approx(wb / norm).epsilon(1e-12));
    CHECK(l2_norm(out) == doctest::Approx(1.0).epsilon(1e-12));

    // empty stays empty; one-hot collapses to weight 1
    CHECK(tfidf_transform(SparseVector{{}, {}, 2}, idf).empty());
    SparseVector onehot;
    onehot.dim = 2;
    onehot.idx = {0};
    onehot.val = {5.0};
    const SparseVector o = tfidf_transform(onehot, idf);
    CHECK(o.val[0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("tfidf is scale-invariant after normalization") {
    const Vocabulary v = build_vocabulary({{"a", "b", "c"}, {"a"}, {"b", "c"}});
    const IdfModel idf = tfidf_fit(v);
    SplitMix64 rng(5);
    for (int round = 0; round < 100; ++round) {
        SparseVector counts;
        counts.dim = 3;
        for (uint32_t t = 0; t < 3; ++t) {
            const double c = static_cast<double>(rng.below(4));
            if (c > 0) {
                counts.idx.push_back(t);
                counts.val.push_back(c);
            }
        }
        SparseVector doubled = counts;
        for (double& x : doubled.val) x *= 2.0;
        const SparseVector a = tfidf_transform(counts, idf);
        const SparseVector b = tfidf_transform(doubled, idf);
        REQUIRE(a.idx == b.idx);
        REQUIRE(a.val == b.val); // bit-identical: scaling by 2 is exact
        if (!a.empty())
            CHECK(std::abs(l2_norm(a) - 1.0) < 1e-9);
    }
}
