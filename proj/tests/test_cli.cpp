// End-to-end checks of the command-line binary: exit codes, stream
// discipline (data on stdout, diagnostics on stderr) and the train ->
// predict -> evaluate flow.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

using namespace std::string_literals;
namespace fs = std::filesystem;

namespace {

const std::string kCli = QIRAA_CLI_PATH;

fs::path work_dir() {
    const fs::path dir = fs::temp_directory_path() / "qiraa_cli_test";
    fs::create_directories(dir);
    return dir;
}

int run(const std::string& args, const fs::path& out, const fs::path& err) {
    const std::string cmd =
        kCli + " " + args + " >" + out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

} // namespace

TEST_CASE("cli flow: synth, stats, train, predict, evaluate, grid") {
    const fs::path dir = work_dir();
    const fs::path corpus = dir / "corpus.jsonl";
    const fs::path model = dir / "model.json";
    const fs::path out = dir / "out.txt";
    const fs::path err = dir / "err.txt";

    // synth writes a deterministic corpus
    REQUIRE(run("synth --out " + corpus.string() +
                    " --docs-per-class 15 15 15 15 --vocab-sizes 15 20 25 30 "
                    "--doc-len-min 8 --doc-len-max 16 --overlap 0 --seed 42",
                out, err) == 0);
    CHECK(slurp(out).empty()); // data file only, no stdout chatter
    CHECK(slurp(err).find("config:") != std::string::npos);

    // stats renders 4 class rows plus a total row
    REQUIRE(run("stats " + corpus.string(), out, err) == 0);
    const std::string stats = slurp(out);
    CHECK(count_lines(stats) == 6); // header + 4 + total
    CHECK(stats.find("Easy") != std::string::npos);
    CHECK(stats.find("Very difficult") != std::string::npos);
    CHECK(stats.find("Total") != std::string::npos);
    REQUIRE(run("stats " + corpus.string() + " --raw-tokens", out, err) == 0);

    // train a model
    REQUIRE(run("train " + corpus.string() + " --algo mnb --rep tfidf --ngrams 1-2 "
                    "--seed 42 --out " + model.string(),
                out, err) == 0);
    CHECK(fs::exists(model));
    CHECK(slurp(err).find("config: train") != std::string::npos);

    // predict labels for raw text lines and JSONL lines
    const fs::path input = dir / "input.txt";
    {
        // first two generated documents, as raw text and as JSONL
        std::ifstream in(corpus);
        std::string line1, line2;
        std::getline(in, line1);
        std::getline(in, line2);
        std::ofstream doc(input, std::ios::binary);
        doc << line1 << '\n' << line2 << '\n';
    }
    REQUIRE(run("predict " + model.string() + " " + input.string(), out, err) == 0);
    const std::string labels = slurp(out);
    CHECK(count_lines(labels) == 2);
    CHECK(labels.find("easy") != std::string::npos);

    REQUIRE(run("predict " + model.string() + " " + input.string() + " --scores",
                out, err) == 0);
    CHECK(slurp(out).find("easy=") != std::string::npos);

    // empty document falls back to priors with a warning
    {
        std::ofstream doc(input, std::ios::binary);
        doc << "\n";
    }
    REQUIRE(run("predict " + model.string() + " " + input.string(), out, err) == 0);
    CHECK(count_lines(slurp(out)) == 1);
    CHECK(slurp(err).find("empty after preprocessing") != std::string::npos);

    // evaluate the model on its own training corpus
    REQUIRE(run("evaluate " + model.string() + " " + corpus.string(), out, err) == 0);
    CHECK(slurp(out).find("Accuracy") != std::string::npos);
    REQUIRE(run("evaluate " + model.string() + " " + corpus.string() + " --json",
                out, err) == 0);
    CHECK(slurp(out).find("\"accuracy\"") != std::string::npos);

    // grid: fixed seed twice gives byte-identical JSON
    const fs::path grid1 = dir / "grid1.json";
    const fs::path grid2 = dir / "grid2.json";
    REQUIRE(run("grid " + corpus.string() + " --seed 7 --json " + grid1.string(),
                out, err) == 0);
    CHECK(slurp(out).find("Table 6.") != std::string::npos);
    REQUIRE(run("grid " + corpus.string() + " --seed 7 --json " + grid2.string(),
                out, err) == 0);
    REQUIRE(fs::exists(grid1));
    CHECK(slurp(grid1) == slurp(grid2));
    CHECK(slurp(grid1).find("\"cells\"") != std::string::npos);

    fs::remove_all(dir);
}

TEST_CASE("cli exit codes") {
    const fs::path dir = work_dir();
    const fs::path out = dir / "o.txt";
    const fs::path err = dir / "e.txt";
    const fs::path corpus = dir / "tiny.jsonl";
    {
        std::ofstream c(corpus, std::ios::binary);
        c << "{\"text\":\"كتاب جميل\",\"label\":\"easy\"}\n";
        c << "{\"text\":\"كتاب صعب\",\"label\":\"difficult\"}\n";
    }

    // usage errors -> 1
    CHECK(run("train " + corpus.string() + " --algo nope --out x.json", out, err) == 1);
    CHECK(run("no-such-command", out, err) == 1);
    CHECK(run("stats", out, err) == 1);
    CHECK(run("stats " + corpus.string() + " --bogus-flag", out, err) == 1);

    // data errors -> 2
    CHECK(run("stats /does/not/exist.jsonl", out, err) == 2);
    CHECK(slurp(err).find("error:") != std::string::npos);
    CHECK(run("predict /does/not/exist.json /dev/null", out, err) == 2);

    // unlabeled document -> 2 naming the id
    const fs::path unlabeled = dir / "unlabeled.jsonl";
    {
        std::ofstream c(unlabeled, std::ios::binary);
        c << "{\"id\":\"mystery\",\"text\":\"كتاب\"}\n";
    }
    CHECK(run("stats " + unlabeled.string(), out, err) == 2);
    CHECK(slurp(err).find("mystery") != std::string::npos);

    // model version mismatch -> 2
    const fs::path model = dir / "m.json";
    REQUIRE(run("train " + corpus.string() + " --algo mnb --out " + model.string(),
                out, err) == 0);
    std::string text = slurp(model);
    const auto pos = text.find("\"version\": 1");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 12, "\"version\": 99");
    {
        std::ofstream m(model, std::ios::binary);
        m << text;
    }
    CHECK(run("predict " + model.string() + " /dev/null", out, err) == 2);
    CHECK(slurp(err).find("version") != std::string::npos);

    // help exits 0
    CHECK(run("--help", out, err) == 0);

    fs::remove_all(dir);
}
