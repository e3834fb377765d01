// qiraa: command-line front end for the Arabic readability pipeline.
// Subcommands: stats, train, predict, evaluate, grid, synth.
// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qiraa/classify.hpp"
#include "qiraa/corpus.hpp"
#include "qiraa/errors.hpp"
#include "qiraa/eval.hpp"
#include "qiraa/parallel.hpp"
#include "qiraa/synth.hpp"

namespace {

using namespace qiraa;

struct PreprocessFlags {
    std::string stopwords_file;
    std::string prefixes_file;
    std::string suffixes_file;
    int min_stem_length = 3;
    bool fold_teh_marbuta = false;
    bool no_filter = false;
    bool no_normalize = false;
    bool no_stopword_removal = false;
    bool no_stem = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--stopwords", stopwords_file,
                        "stop-word list file (one entry per line, # comments)");
        cmd->add_option("--prefixes", prefixes_file, "prefix table file");
        cmd->add_option("--suffixes", suffixes_file, "suffix table file");
        cmd->add_option("--min-stem-length", min_stem_length,
                        "minimum stem length in letters")
            ->check(CLI::PositiveNumber);
        cmd->add_flag("--fold-teh-marbuta", fold_teh_marbuta,
                      "normalize teh marbuta to heh");
        cmd->add_flag("--no-filter", no_filter, "skip the filtering stage");
        cmd->add_flag("--no-normalize", no_normalize, "skip normalization");
        cmd->add_flag("--no-stopword-removal", no_stopword_removal,
                      "skip stop-word removal");
        cmd->add_flag("--no-stem", no_stem, "skip light stemming");
    }

    PreprocessConfig build() const {
        PreprocessConfig cfg = PreprocessConfig::defaults();
        if (!stopwords_file.empty()) {
            cfg.stopwords.clear();
            for (const std::string& w : load_wordlist(stopwords_file))
                cfg.stopwords.insert(normalize(w, fold_teh_marbuta));
        }
        if (!prefixes_file.empty()) {
            cfg.prefixes = load_wordlist(prefixes_file);
            sort_affixes_longest_first(cfg.prefixes);
        }
        if (!suffixes_file.empty()) {
            cfg.suffixes = load_wordlist(suffixes_file);
            sort_affixes_longest_first(cfg.suffixes);
        }
        cfg.min_stem_length = min_stem_length;
        cfg.fold_teh_marbuta = fold_teh_marbuta;
        cfg.filter_stage = !no_filter;
        cfg.normalize_stage = !no_normalize;
        cfg.stopword_stage = !no_stopword_removal;
        cfg.stem_stage = !no_stem;
        return cfg;
    }

    std::string echo() const {
        std::ostringstream os;
        os << "stopwords=" << (stopwords_file.empty() ? "<builtin>" : stopwords_file)
           << " prefixes=" << (prefixes_file.empty() ? "<builtin>" : prefixes_file)
           << " suffixes=" << (suffixes_file.empty() ? "<builtin>" : suffixes_file)
           << " min_stem_length=" << min_stem_length
           << " fold_teh_marbuta=" << (fold_teh_marbuta ? 1 : 0) << " stages="
           << (no_filter ? "-" : "F") << (no_normalize ? "-" : "N")
           << (no_stopword_removal ? "-" : "S") << (no_stem ? "-" : "L");
        return os.str();
    }
};

int cmd_stats(const std::string& corpus_path, const PreprocessFlags& pp,
              bool raw_tokens) {
    std::fprintf(stderr, "config: stats corpus=%s raw_tokens=%d %s\n",
                 corpus_path.c_str(), raw_tokens ? 1 : 0, pp.echo().c_str());
    const Corpus corpus = load_corpus(corpus_path);
    const CorpusStats stats = corpus_stats(corpus, pp.build(), raw_tokens);
    std::fputs(render_stats_table(stats).c_str(), stdout);
    return 0;
}

struct TrainFlags {
    std::string algo = "mnb";
    std::string rep = "count";
    std::string ngrams = "1-2";
    std::string idf = "smooth";
    uint64_t seed = 42;
    double alpha = 1.0;
    std::string penalty = "l2";
    double C = 1.0;
    int max_iter = 0;
    double tol = 1e-4;
    std::string svm_loss = "hinge";
    int trees = 100;
    int max_depth = 0;
    int mtry = 0;
    uint32_t min_df = 1;
    uint32_t max_features = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--algo", algo, "mnb|bnb|logreg|svm|rf")
            ->check(CLI::IsMember({"mnb", "bnb", "logreg", "svm", "rf"}));
        cmd->add_option("--rep", rep, "count|tfidf")
            ->check(CLI::IsMember({"count", "tfidf"}));
        cmd->add_option("--ngrams", ngrams, "1|2|1-2")
            ->check(CLI::IsMember({"1", "2", "1-2"}));
        cmd->add_option("--idf", idf, "smooth|plain")
            ->check(CLI::IsMember({"smooth", "plain"}));
        cmd->add_option("--seed", seed, "PRNG seed");
        cmd->add_option("--alpha", alpha, "naive Bayes smoothing");
        cmd->add_option("--penalty", penalty, "l1|l2")
            ->check(CLI::IsMember({"l1", "l2"}));
        cmd->add_option("-C,--C", C, "inverse regularization strength");
        cmd->add_option("--max-iter", max_iter,
                        "epoch cap (0 = logreg 1000 / svm 1500)");
        cmd->add_option("--tol", tol, "relative objective change threshold");
        cmd->add_option("--svm-loss", svm_loss, "hinge|squared_hinge")
            ->check(CLI::IsMember({"hinge", "squared_hinge"}));
        cmd->add_option("--trees", trees, "forest size")->check(CLI::PositiveNumber);
        cmd->add_option("--max-depth", max_depth, "tree depth cap (0 = unlimited)");
        cmd->add_option("--mtry", mtry,
                        "features tried per split (0 = floor(sqrt(V)))");
        cmd->add_option("--min-df", min_df, "minimum document frequency");
        cmd->add_option("--max-features", max_features,
                        "vocabulary size cap (0 = unlimited)");
    }

    TrainConfig build_train() const {
        TrainConfig cfg;
        cfg.algorithm = parse_algorithm(algo);
        cfg.alpha = alpha;
        cfg.penalty = penalty == "l1" ? Penalty::L1 : Penalty::L2;
        cfg.C = C;
        cfg.max_iter = max_iter;
        cfg.tol = tol;
        cfg.svm_loss = svm_loss == "squared_hinge" ? SvmLoss::SquaredHinge
                                                   : SvmLoss::Hinge;
        cfg.n_trees = trees;
        cfg.max_depth = max_depth;
        cfg.mtry = mtry;
        cfg.seed = seed;
        return cfg;
    }

    PipelineConfig build_pipeline(const PreprocessFlags& pp) const {
        PipelineConfig cfg;
        cfg.preprocess = pp.build();
        cfg.ngrams = parse_ngram_key(ngrams);
        cfg.representation = parse_representation(rep);
        cfg.idf_variant = idf == "plain" ? IdfVariant::Plain : IdfVariant::Smooth;
        cfg.vocab_options.min_df = min_df;
        cfg.vocab_options.max_features = max_features;
        return cfg;
    }
};

int cmd_train(const std::string& corpus_path, const std::string& out,
              const TrainFlags& tf, const PreprocessFlags& pp) {
    std::fprintf(stderr,
                 "config: train corpus=%s out=%s algo=%s rep=%s ngrams=%s idf=%s "
                 "alpha=%g penalty=%s C=%g max_iter=%d tol=%g svm_loss=%s trees=%d "
                 "max_depth=%d mtry=%d min_df=%u max_features=%u seed=%" PRIu64
                 " %s\n",
                 corpus_path.c_str(), out.c_str(), tf.algo.c_str(), tf.rep.c_str(),
                 tf.ngrams.c_str(), tf.idf.c_str(), tf.alpha, tf.penalty.c_str(),
                 tf.C, tf.max_iter, tf.tol, tf.svm_loss.c_str(), tf.trees,
                 tf.max_depth, tf.mtry, tf.min_df, tf.max_features, tf.seed,
                 pp.echo().c_str());

    const Corpus corpus = load_corpus(corpus_path);
    const TrainedModel model =
        train_model(corpus, tf.build_pipeline(pp), tf.build_train());
    save_model(model, out);
    std::fprintf(stderr,
                 "trained %s on %zu documents; vocabulary %zu terms; model "
                 "written to %s (pipeline hash %016" PRIx64 ")\n",
                 algorithm_display(model.train_config.algorithm), corpus.size(),
                 model.features.vocab.size(), out.c_str(),
                 pipeline_config_hash(model.pipeline));
    return 0;
}

int cmd_predict(const std::string& model_path, const std::string& input,
                bool with_scores) {
    std::fprintf(stderr, "config: predict model=%s input=%s scores=%d\n",
                 model_path.c_str(), input.empty() ? "-" : input.c_str(),
                 with_scores ? 1 : 0);
    const TrainedModel model = load_model(model_path);

    std::ifstream file;
    std::istream* in = &std::cin;
    if (!input.empty() && input != "-") {
        file.open(input, std::ios::binary);
        if (!file) throw DataError("cannot open input file: " + input);
        in = &file;
    }

    std::string line;
    size_t lineno = 0;
    while (std::getline(*in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string text = line;
        std::string id = "line-" + std::to_string(lineno);
        if (!line.empty() && line.front() == '{') {
            // JSONL record; fall back to raw text if it does not parse
            try {
                auto rec = nlohmann::json::parse(line);
                if (rec.is_object() && rec.contains("text") &&
                    rec["text"].is_string()) {
                    text = rec["text"].get<std::string>();
                    if (rec.contains("id") && rec["id"].is_string())
                        id = rec["id"].get<std::string>();
                }
            } catch (const nlohmann::json::exception&) {
            }
        }

        const SparseVector x = vectorize_document(model, text);
        if (x.empty())
            std::fprintf(stderr,
                         "warning: %s is empty after preprocessing; prediction "
                         "falls back to the training priors\n",
                         id.c_str());
        const Prediction pred = predict_vector(model, x);
        if (with_scores) {
            std::string out = label_name(pred.label);
            for (Label l : model.core.classes) {
                char buf[64];
                std::snprintf(buf, sizeof(buf), "\t%s=%.9g", label_name(l),
                              pred.scores[label_index(l)]);
                out += buf;
            }
            std::fprintf(stdout, "%s\n", out.c_str());
        } else {
            std::fprintf(stdout, "%s\n", label_name(pred.label));
        }
    }
    return 0;
}

int cmd_evaluate(const std::string& model_path, const std::string& corpus_path,
                 bool weighted, bool as_json) {
    std::fprintf(stderr, "config: evaluate model=%s corpus=%s averaging=%s json=%d\n",
                 model_path.c_str(), corpus_path.c_str(),
                 weighted ? "weighted" : "macro", as_json ? 1 : 0);
    const TrainedModel model = load_model(model_path);
    const Corpus corpus = load_corpus(corpus_path);

    std::vector<Label> y_true, y_pred;
    for (const Document& doc : corpus.docs) {
        if (!doc.label) throw DataError("unlabeled document '" + doc.id + "'");
        y_true.push_back(*doc.label);
        y_pred.push_back(predict_text(model, doc.text).label);
    }
    EvalReport rep = metrics(confusion(y_true, y_pred));
    rep.config.representation = model.pipeline.representation;
    rep.config.ngrams = model.pipeline.ngrams;
    rep.config.algorithm = model.train_config.algorithm;
    rep.config.seed = model.train_config.seed;

    if (as_json)
        std::fprintf(stdout, "%s\n", report_to_json_string(rep).c_str());
    else
        std::fputs(render_report(rep, weighted ? Averaging::Weighted
                                               : Averaging::Macro)
                       .c_str(),
                   stdout);
    return 0;
}

int cmd_grid(const std::string& corpus_path, uint64_t seed,
             const std::string& json_out, bool weighted) {
    std::fprintf(stderr, "config: grid corpus=%s seed=%" PRIu64 " json=%s averaging=%s\n",
                 corpus_path.c_str(), seed,
                 json_out.empty() ? "<none>" : json_out.c_str(),
                 weighted ? "weighted" : "macro");
    const Corpus corpus = load_corpus(corpus_path);
    const GridReport grid = run_grid(corpus, seed);

    const std::string json = grid_to_json(grid);
    if (json_out == "-") {
        std::fprintf(stdout, "%s\n", json.c_str());
    } else {
        std::fputs(render_grid_tables(grid, weighted ? Averaging::Weighted
                                                     : Averaging::Macro)
                       .c_str(),
                   stdout);
        if (!json_out.empty()) {
            std::ofstream out(json_out, std::ios::binary);
            if (!out) throw DataError("cannot write grid report: " + json_out);
            out << json << '\n';
        }
    }
    return 0;
}

int cmd_synth(const GenConfig& cfg, const std::string& out) {
    std::fprintf(stderr,
                 "config: synth out=%s docs=%d,%d,%d,%d len=%d..%d "
                 "vocab=%d,%d,%d,%d overlap=%g seed=%" PRIu64 "\n",
                 out.c_str(), cfg.docs_per_class[0], cfg.docs_per_class[1],
                 cfg.docs_per_class[2], cfg.docs_per_class[3], cfg.doc_len_min,
                 cfg.doc_len_max, cfg.vocab_size[0], cfg.vocab_size[1],
                 cfg.vocab_size[2], cfg.vocab_size[3], cfg.overlap, cfg.seed);
    const Corpus corpus = generate(cfg);
    save_corpus(corpus, out);
    std::fprintf(stderr, "wrote %zu documents to %s\n", corpus.size(), out.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    qiraa::apply_thread_cap();

    CLI::App app{"Arabic readability level classifier"};
    app.require_subcommand(1);

    // stats
    auto* stats = app.add_subcommand("stats", "per-class document and token counts");
    std::string stats_corpus;
    bool raw_tokens = false;
    stats->add_option("corpus", stats_corpus, "JSONL corpus file")->required();
    stats->add_flag("--raw-tokens", raw_tokens,
                    "count whitespace tokens instead of pipeline output");
    PreprocessFlags stats_pp;
    stats_pp.attach(stats);

    // train
    auto* train = app.add_subcommand("train", "train a classifier");
    std::string train_corpus, train_out;
    train->add_option("corpus", train_corpus, "JSONL corpus file")->required();
    train->add_option("--out", train_out, "model file to write")->required();
    TrainFlags tf;
    tf.attach(train);
    PreprocessFlags train_pp;
    train_pp.attach(train);

    // predict
    auto* predict = app.add_subcommand("predict", "label documents with a model");
    std::string predict_model, predict_input;
    bool with_scores = false;
    predict->add_option("model", predict_model, "model file")->required();
    predict->add_option("input", predict_input,
                        "text or JSONL lines ('-' or omitted = stdin)");
    predict->add_flag("--scores", with_scores, "append per-class scores");

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "score a model on a corpus");
    std::string eval_model, eval_corpus;
    bool eval_weighted = false, eval_json = false;
    evaluate->add_option("model", eval_model, "model file")->required();
    evaluate->add_option("corpus", eval_corpus, "labeled JSONL corpus")->required();
    evaluate->add_flag("--weighted", eval_weighted,
                       "render support-weighted instead of macro averages");
    evaluate->add_flag("--json", eval_json, "emit the report as JSON");

    // grid
    auto* grid = app.add_subcommand(
        "grid", "run the full 2x3x5 representation/n-gram/algorithm grid");
    std::string grid_corpus, grid_json;
    uint64_t grid_seed = 42;
    bool grid_weighted = false;
    grid->add_option("corpus", grid_corpus, "labeled JSONL corpus")->required();
    grid->add_option("--seed", grid_seed, "split + training seed");
    grid->add_option("--json", grid_json,
                     "write the grid report JSON here ('-' = stdout only)");
    grid->add_flag("--weighted", grid_weighted,
                   "render support-weighted instead of macro averages");

    // synth
    auto* synth = app.add_subcommand("synth", "generate a synthetic corpus");
    GenConfig gen;
    std::string synth_out;
    std::vector<int> synth_docs, synth_vocab;
    synth->add_option("--out", synth_out, "JSONL file to write")->required();
    synth->add_option("--docs-per-class", synth_docs, "four document counts")
        ->expected(4);
    synth->add_option("--vocab-sizes", synth_vocab, "four vocabulary sizes")
        ->expected(4);
    synth->add_option("--doc-len-min", gen.doc_len_min, "minimum document length");
    synth->add_option("--doc-len-max", gen.doc_len_max, "maximum document length");
    synth->add_option("--overlap", gen.overlap,
                      "vocabulary overlap between adjacent levels, in [0,1]");
    synth->add_option("--seed", gen.seed, "generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (stats->parsed()) return cmd_stats(stats_corpus, stats_pp, raw_tokens);
        if (train->parsed()) return cmd_train(train_corpus, train_out, tf, train_pp);
        if (predict->parsed())
            return cmd_predict(predict_model, predict_input, with_scores);
        if (evaluate->parsed())
            return cmd_evaluate(eval_model, eval_corpus, eval_weighted, eval_json);
        if (grid->parsed())
            return cmd_grid(grid_corpus, grid_seed, grid_json, grid_weighted);
        if (synth->parsed()) {
            for (size_t i = 0; i < synth_docs.size(); ++i)
                gen.docs_per_class[i] = synth_docs[i];
            for (size_t i = 0; i < synth_vocab.size(); ++i)
                gen.vocab_size[i] = synth_vocab[i];
            return cmd_synth(gen, synth_out);
        }
    } catch (const qiraa::UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const qiraa::DataError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 3;
    }
    return 1;
}
