#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "qiraa/classify.hpp"
#include "qiraa/errors.hpp"

namespace qiraa {

using nlohmann::ordered_json;

namespace {

// JSON has no infinities; alpha = 0 naive Bayes legitimately produces
// -inf log parameters, so non-finite values travel as strings.
ordered_json real_to_json(double x) {
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return "nan";
    return x > 0 ? "inf" : "-inf";
}

double real_from_json(const ordered_json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    }
    throw DataError("model file: expected a real number");
}

ordered_json reals_to_json(const std::vector<double>& v) {
    ordered_json arr = ordered_json::array();
    for (double x : v) arr.push_back(real_to_json(x));
    return arr;
}

std::vector<double> reals_from_json(const ordered_json& j) {
    std::vector<double> v;
    v.reserve(j.size());
    for (const auto& x : j) v.push_back(real_from_json(x));
    return v;
}

ordered_json matrix_to_json(const std::vector<std::vector<double>>& m) {
    ordered_json arr = ordered_json::array();
    for (const auto& row : m) arr.push_back(reals_to_json(row));
    return arr;
}

std::vector<std::vector<double>> matrix_from_json(const ordered_json& j) {
    std::vector<std::vector<double>> m;
    m.reserve(j.size());
    for (const auto& row : j) m.push_back(reals_from_json(row));
    return m;
}

ordered_json preprocess_to_json(const PreprocessConfig& cfg) {
    std::vector<std::string> stopwords(cfg.stopwords.begin(), cfg.stopwords.end());
    std::sort(stopwords.begin(), stopwords.end());
    ordered_json j;
    j["stopwords"] = stopwords;
    j["prefixes"] = cfg.prefixes;
    j["suffixes"] = cfg.suffixes;
    j["min_stem_length"] = cfg.min_stem_length;
    j["fold_teh_marbuta"] = cfg.fold_teh_marbuta;
    j["filter_stage"] = cfg.filter_stage;
    j["normalize_stage"] = cfg.normalize_stage;
    j["stopword_stage"] = cfg.stopword_stage;
    j["stem_stage"] = cfg.stem_stage;
    return j;
}

PreprocessConfig preprocess_from_json(const ordered_json& j) {
    PreprocessConfig cfg;
    for (const auto& w : j.at("stopwords"))
        cfg.stopwords.insert(w.get<std::string>());
    cfg.prefixes = j.at("prefixes").get<std::vector<std::string>>();
    cfg.suffixes = j.at("suffixes").get<std::vector<std::string>>();
    cfg.min_stem_length = j.at("min_stem_length").get<int>();
    cfg.fold_teh_marbuta = j.at("fold_teh_marbuta").get<bool>();
    cfg.filter_stage = j.at("filter_stage").get<bool>();
    cfg.normalize_stage = j.at("normalize_stage").get<bool>();
    cfg.stopword_stage = j.at("stopword_stage").get<bool>();
    cfg.stem_stage = j.at("stem_stage").get<bool>();
    return cfg;
}

ordered_json pipeline_to_json(const PipelineConfig& cfg) {
    ordered_json j;
    j["preprocess"] = preprocess_to_json(cfg.preprocess);
    j["ngrams"] = {{"n_min", cfg.ngrams.n_min}, {"n_max", cfg.ngrams.n_max}};
    j["representation"] = representation_key(cfg.representation);
    j["idf_variant"] = cfg.idf_variant == IdfVariant::Smooth ? "smooth" : "plain";
    j["min_df"] = cfg.vocab_options.min_df;
    j["max_features"] = cfg.vocab_options.max_features;
    return j;
}

PipelineConfig pipeline_from_json(const ordered_json& j) {
    PipelineConfig cfg;
    cfg.preprocess = preprocess_from_json(j.at("preprocess"));
    cfg.ngrams.n_min = j.at("ngrams").at("n_min").get<int>();
    cfg.ngrams.n_max = j.at("ngrams").at("n_max").get<int>();
    cfg.representation = parse_representation(j.at("representation").get<std::string>());
    cfg.idf_variant = j.at("idf_variant").get<std::string>() == "plain"
                          ? IdfVariant::Plain
                          : IdfVariant::Smooth;
    cfg.vocab_options.min_df = j.at("min_df").get<uint32_t>();
    cfg.vocab_options.max_features = j.at("max_features").get<uint32_t>();
    return cfg;
}

ordered_json train_config_to_json(const TrainConfig& cfg) {
    ordered_json j;
    j["algorithm"] = algorithm_key(cfg.algorithm);
    j["alpha"] = cfg.alpha;
    j["penalty"] = cfg.penalty == Penalty::L1 ? "l1" : "l2";
    j["C"] = cfg.C;
    j["max_iter"] = cfg.max_iter;
    j["tol"] = cfg.tol;
    j["svm_loss"] = cfg.svm_loss == SvmLoss::Hinge ? "hinge" : "squared_hinge";
    j["n_trees"] = cfg.n_trees;
    j["max_depth"] = cfg.max_depth;
    j["mtry"] = cfg.mtry;
    j["seed"] = cfg.seed;
    return j;
}

TrainConfig train_config_from_json(const ordered_json& j) {
    TrainConfig cfg;
    cfg.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
    cfg.alpha = j.at("alpha").get<double>();
    cfg.penalty = j.at("penalty").get<std::string>() == "l1" ? Penalty::L1 : Penalty::L2;
    cfg.C = j.at("C").get<double>();
    cfg.max_iter = j.at("max_iter").get<int>();
    cfg.tol = j.at("tol").get<double>();
    cfg.svm_loss = j.at("svm_loss").get<std::string>() == "squared_hinge"
                       ? SvmLoss::SquaredHinge
                       : SvmLoss::Hinge;
    cfg.n_trees = j.at("n_trees").get<int>();
    cfg.max_depth = j.at("max_depth").get<int>();
    cfg.mtry = j.at("mtry").get<int>();
    cfg.seed = j.at("seed").get<uint64_t>();
    return cfg;
}

ordered_json params_to_json(const ClassifierCore& core) {
    ordered_json j;
    if (const auto* p = std::get_if<MnbParams>(&core.params)) {
        j["alpha"] = p->alpha;
        j["log_prior"] = reals_to_json(p->log_prior);
        j["log_likelihood"] = matrix_to_json(p->log_likelihood);
    } else if (const auto* p = std::get_if<BnbParams>(&core.params)) {
        j["alpha"] = p->alpha;
        j["log_prior"] = reals_to_json(p->log_prior);
        j["log_present"] = matrix_to_json(p->log_present);
        j["log_absent"] = matrix_to_json(p->log_absent);
    } else if (const auto* p = std::get_if<LinearParams>(&core.params)) {
        j["logistic"] = p->logistic;
        j["bias"] = reals_to_json(p->bias);
        j["weights"] = matrix_to_json(p->weights);
    } else if (const auto* p = std::get_if<ForestParams>(&core.params)) {
        ordered_json trees = ordered_json::array();
        for (const Tree& tree : p->trees) {
            ordered_json nodes = ordered_json::array();
            for (const TreeNode& nd : tree.nodes) {
                ordered_json n;
                n["f"] = nd.feature;
                n["t"] = real_to_json(nd.threshold);
                n["l"] = nd.left;
                n["r"] = nd.right;
                n["c"] = nd.counts;
                nodes.push_back(std::move(n));
            }
            trees.push_back(ordered_json{{"nodes", std::move(nodes)}});
        }
        j["trees"] = std::move(trees);
    }
    return j;
}

void params_from_json(const ordered_json& j, ClassifierCore& core) {
    switch (core.algorithm) {
        case Algorithm::MNB: {
            MnbParams p;
            p.alpha = j.at("alpha").get<double>();
            p.log_prior = reals_from_json(j.at("log_prior"));
            p.log_likelihood = matrix_from_json(j.at("log_likelihood"));
            core.params = std::move(p);
            break;
        }
        case Algorithm::BNB: {
            BnbParams p;
            p.alpha = j.at("alpha").get<double>();
            p.log_prior = reals_from_json(j.at("log_prior"));
            p.log_present = matrix_from_json(j.at("log_present"));
            p.log_absent = matrix_from_json(j.at("log_absent"));
            core.params = std::move(p);
            break;
        }
        case Algorithm::LogReg:
        case Algorithm::SVM: {
            LinearParams p;
            p.logistic = j.at("logistic").get<bool>();
            p.bias = reals_from_json(j.at("bias"));
            p.weights = matrix_from_json(j.at("weights"));
            core.params = std::move(p);
            break;
        }
        case Algorithm::RF: {
            ForestParams p;
            for (const auto& tj : j.at("trees")) {
                Tree tree;
                for (const auto& nj : tj.at("nodes")) {
                    TreeNode nd;
                    nd.feature = nj.at("f").get<int32_t>();
                    nd.threshold = real_from_json(nj.at("t"));
                    nd.left = nj.at("l").get<int32_t>();
                    nd.right = nj.at("r").get<int32_t>();
                    const auto& cj = nj.at("c");
                    for (int c = 0; c < kNumLabels; ++c)
                        nd.counts[c] = cj.at(c).get<int64_t>();
                    tree.nodes.push_back(std::move(nd));
                }
                p.trees.push_back(std::move(tree));
            }
            core.params = std::move(p);
            break;
        }
    }
}

uint64_t fnv1a(const std::string& data) {
    uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string hex64(uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[v & 0xF];
        v >>= 4;
    }
    return s;
}

} // namespace

uint64_t pipeline_config_hash(const PipelineConfig& config) {
    return fnv1a(pipeline_to_json(config).dump());
}

std::string model_to_json(const TrainedModel& model) {
    ordered_json j;
    j["format"] = "qiraa-model";
    j["version"] = kModelFormatVersion;
    j["pipeline"] = pipeline_to_json(model.pipeline);
    j["pipeline_hash"] = hex64(pipeline_config_hash(model.pipeline));
    j["train_config"] = train_config_to_json(model.train_config);

    ordered_json vocab;
    vocab["doc_count"] = model.features.vocab.doc_count;
    vocab["terms"] = model.features.vocab.terms;
    vocab["df"] = model.features.vocab.df;
    j["vocabulary"] = std::move(vocab);

    if (model.features.idf) {
        ordered_json idf;
        idf["variant"] =
            model.features.idf->variant == IdfVariant::Smooth ? "smooth" : "plain";
        idf["doc_count"] = model.features.idf->doc_count;
        idf["values"] = reals_to_json(model.features.idf->idf);
        j["idf"] = std::move(idf);
    } else {
        j["idf"] = nullptr;
    }

    ordered_json classes = ordered_json::array();
    for (Label l : model.core.classes) classes.push_back(label_name(l));
    j["classes"] = std::move(classes);
    j["params"] = params_to_json(model.core);
    return j.dump(2);
}

TrainedModel model_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const ordered_json::exception& e) {
        throw DataError(std::string("corrupt model file: ") + e.what());
    }
    try {
        if (!j.is_object() || j.value("format", "") != "qiraa-model")
            throw DataError("not a qiraa model file");
        const int version = j.at("version").get<int>();
        if (version != kModelFormatVersion)
            throw DataError("unsupported model format version " +
                            std::to_string(version) + "; this build reads version " +
                            std::to_string(kModelFormatVersion));

        TrainedModel model;
        model.pipeline = pipeline_from_json(j.at("pipeline"));
        model.train_config = train_config_from_json(j.at("train_config"));

        model.features.vocab.doc_count = j.at("vocabulary").at("doc_count").get<uint64_t>();
        model.features.vocab.terms =
            j.at("vocabulary").at("terms").get<std::vector<std::string>>();
        model.features.vocab.df =
            j.at("vocabulary").at("df").get<std::vector<uint32_t>>();
        if (model.features.vocab.terms.size() != model.features.vocab.df.size())
            throw DataError("corrupt model file: vocabulary arrays disagree");
        model.features.vocab.index.reserve(model.features.vocab.terms.size());
        for (uint32_t i = 0; i < model.features.vocab.terms.size(); ++i)
            model.features.vocab.index.emplace(model.features.vocab.terms[i], i);

        if (!j.at("idf").is_null()) {
            IdfModel idf;
            idf.variant = j.at("idf").at("variant").get<std::string>() == "plain"
                              ? IdfVariant::Plain
                              : IdfVariant::Smooth;
            idf.doc_count = j.at("idf").at("doc_count").get<uint64_t>();
            idf.idf = reals_from_json(j.at("idf").at("values"));
            model.features.idf = std::move(idf);
        }

        model.core.algorithm = model.train_config.algorithm;
        for (const auto& c : j.at("classes"))
            model.core.classes.push_back(parse_label(c.get<std::string>()));
        params_from_json(j.at("params"), model.core);
        return model;
    } catch (const ordered_json::exception& e) {
        throw DataError(std::string("corrupt model file: ") + e.what());
    }
}

void save_model(const TrainedModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write model file: " + path);
    out << model_to_json(model) << '\n';
    if (!out) throw DataError("failed writing model file: " + path);
}

TrainedModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return model_from_json(buf.str());
}

} // namespace qiraa
