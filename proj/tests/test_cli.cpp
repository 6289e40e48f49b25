#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

const std::string kBin = INTENTCL_BIN;
const std::string kData = DATA_DIR;

struct Scratch {
    fs::path dir;
    Scratch() {
        dir = fs::temp_directory_path() /
              ("intentcl_test_" + std::to_string(::getpid()) + "_" +
               std::to_string(std::rand()));
        fs::create_directories(dir);
    }
    ~Scratch() {
        std::error_code ec;
        fs::remove_all(dir, ec);
    }
    std::string path(const std::string& name) const { return (dir / name).string(); }
};

int run(const std::string& args, const std::string& stdout_file = "") {
    std::string cmd = kBin + " " + args;
    cmd += " > " + (stdout_file.empty() ? std::string("/dev/null") : stdout_file);
    cmd += " 2> /dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::size_t line_count(const std::string& content) {
    std::size_t n = 0;
    for (char c : content) {
        if (c == '\n') ++n;
    }
    return n;
}

void write(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

std::string demo_config_json(const std::string& out_dir) {
    return std::string("{\n") +
           R"(  "corpus": {"path": ")" + kData + R"(/demo_corpus.jsonl", "format": "jsonl"},)" + "\n" +
           R"(  "preprocess": {"stopwords": ")" + kData + R"(/stopwords.txt", "lemmas": ")" +
           kData + R"(/lemmas.tsv"},)" + "\n" +
           R"(  "featurizer": {"lexicon": {"path": ")" + kData + R"(/demo.lex", "top_k": 15}},)" + "\n" +
           R"(  "classifier": {"kind": "svm"},)" + "\n" +
           R"(  "eval": {"folds": 5, "seed": 42},)" + "\n" +
           R"(  "output": ")" + out_dir + "\"\n}\n";
}

} // namespace

TEST_CASE("run produces the full artifact set and is byte-deterministic") {
    Scratch s;
    write(s.path("config.json"), demo_config_json(s.path("out_a")));
    REQUIRE(run("run --config " + s.path("config.json")) == 0);
    for (const char* name : {"report.csv", "report.json", "ranking.csv",
                             "selection.csv", "parallel_coords.csv", "model.json"}) {
        CHECK(fs::exists(fs::path(s.path("out_a")) / name));
    }

    REQUIRE(run("run --config " + s.path("config.json") + " --out " + s.path("out_b")) == 0);
    CHECK(slurp(s.path("out_a") + "/report.csv") == slurp(s.path("out_b") + "/report.csv"));
    CHECK(slurp(s.path("out_a") + "/ranking.csv") == slurp(s.path("out_b") + "/ranking.csv"));
    CHECK(slurp(s.path("out_a") + "/model.json") == slurp(s.path("out_b") + "/model.json"));

    SUBCASE("parallel folds give the same report") {
        REQUIRE(run("run --config " + s.path("config.json") + " --out " +
                    s.path("out_par") + " --threads 4") == 0);
        CHECK(slurp(s.path("out_a") + "/report.csv") ==
              slurp(s.path("out_par") + "/report.csv"));
    }

    SUBCASE("report.csv carries the config hash header and summary rows") {
        const std::string report = slurp(s.path("out_a") + "/report.csv");
        CHECK(report.rfind("# config=", 0) == 0);
        CHECK(report.find("seed=42") != std::string::npos);
        CHECK(report.find(",ALL,") != std::string::npos);
        CHECK(report.find(",MACRO,") != std::string::npos);
        // header + 5 folds + ALL + MACRO + comment
        CHECK(line_count(report) == 9);
    }
}

TEST_CASE("run refuses to clobber a non-empty output directory") {
    Scratch s;
    write(s.path("config.json"), demo_config_json(s.path("out")));
    REQUIRE(run("run --config " + s.path("config.json")) == 0);
    CHECK(run("run --config " + s.path("config.json")) == 1);
    CHECK(run("run --config " + s.path("config.json") + " --force") == 0);
}

TEST_CASE("seed changes flow through to the artifacts") {
    Scratch s;
    write(s.path("config.json"), demo_config_json(s.path("out_a")));
    REQUIRE(run("run --config " + s.path("config.json")) == 0);
    REQUIRE(run("run --config " + s.path("config.json") + " --seed 7 --out " +
                s.path("out_c")) == 0);
    const std::string a = slurp(s.path("out_a") + "/report.csv");
    const std::string c = slurp(s.path("out_c") + "/report.csv");
    CHECK(a != c);
    CHECK(c.find("seed=7") != std::string::npos);
}

TEST_CASE("a config with both featurizer branches is rejected") {
    Scratch s;
    write(s.path("bad.json"),
          std::string(R"({"corpus": {"path": ")") + kData + R"(/demo_corpus.jsonl"},
            "featurizer": {"lexicon": {"path": ")" + kData + R"(/demo.lex"},
                           "terms": {}},
            "output": ")" + s.path("out") + "\"}");
    CHECK(run("run --config " + s.path("bad.json")) == 1);
}

TEST_CASE("synth writes a deterministic corpus") {
    Scratch s;
    REQUIRE(run("synth --n 50 --seed 9 --out " + s.path("a.jsonl")) == 0);
    REQUIRE(run("synth --n 50 --seed 9 --out " + s.path("b.jsonl")) == 0);
    const std::string a = slurp(s.path("a.jsonl"));
    CHECK(a == slurp(s.path("b.jsonl")));
    CHECK(line_count(a) == 50);
    REQUIRE(run("synth --n 50 --seed 10 --out " + s.path("c.jsonl")) == 0);
    CHECK(a != slurp(s.path("c.jsonl")));
}

TEST_CASE("predict labels posts with a saved model") {
    Scratch s;
    write(s.path("config.json"), demo_config_json(s.path("out")));
    REQUIRE(run("run --config " + s.path("config.json")) == 0);
    const std::string model = s.path("out") + "/model.json";

    REQUIRE(run("predict --model " + model + " --input " + kData +
                "/demo_corpus.jsonl", s.path("pred.jsonl")) == 0);
    const std::string pred = slurp(s.path("pred.jsonl"));
    CHECK(line_count(pred) == 40);
    CHECK(pred.find("\"predicted\"") != std::string::npos);

    SUBCASE("empty input gives empty output and exit 0") {
        write(s.path("empty.jsonl"), "\n  \n");
        REQUIRE(run("predict --model " + model + " --input " + s.path("empty.jsonl"),
                    s.path("empty_out.txt")) == 0);
        CHECK(slurp(s.path("empty_out.txt")).empty());
    }
    SUBCASE("a missing model is an error") {
        CHECK(run("predict --model " + s.path("nope.json") + " --input " + kData +
                  "/demo_corpus.jsonl") == 1);
    }
}

TEST_CASE("compare ranks configs on a shared corpus") {
    Scratch s;
    write(s.path("svm.json"), demo_config_json(s.path("out_svm")));
    std::string nb = demo_config_json(s.path("out_nb"));
    const auto pos = nb.find("\"svm\"");
    nb.replace(pos, 5, "\"nb\"");
    write(s.path("nb.json"), nb);

    REQUIRE(run("compare --configs " + s.path("svm.json") + " " + s.path("nb.json") +
                " --out " + s.path("cmp.csv")) == 0);
    const std::string cmp = slurp(s.path("cmp.csv"));
    CHECK(line_count(cmp) == 4); // comment + header + 2 rows
    CHECK(cmp.find("svm") != std::string::npos);
    CHECK(cmp.find("nb") != std::string::npos);

    SUBCASE("fewer than two configs is an error") {
        CHECK(run("compare --configs " + s.path("svm.json") + " --out " +
                  s.path("one.csv")) == 1);
    }
    SUBCASE("mismatched corpora are an error") {
        Scratch t;
        REQUIRE(run("synth --n 30 --seed 1 --out " + t.path("other.jsonl")) == 0);
        std::string other = demo_config_json(t.path("out_other"));
        const std::string needle = kData + "/demo_corpus.jsonl";
        other.replace(other.find(needle), needle.size(), t.path("other.jsonl"));
        write(t.path("other.json"), other);
        CHECK(run("compare --configs " + s.path("svm.json") + " " +
                  t.path("other.json") + " --out " + t.path("cmp.csv")) == 1);
    }
}

TEST_CASE("kappa prints six decimal places") {
    Scratch s;
    write(s.path("a.txt"), "abuse\nabuse\nadvice\nadvice\n");
    write(s.path("b.txt"), "abuse\nadvice\nabuse\nadvice\n");
    REQUIRE(run("kappa " + s.path("a.txt") + " " + s.path("b.txt"),
                s.path("k.txt")) == 0);
    CHECK(slurp(s.path("k.txt")) == "0.000000\n");

    write(s.path("c.txt"), "abuse\nabuse\nadvice\nadvice\n");
    REQUIRE(run("kappa " + s.path("a.txt") + " " + s.path("c.txt"),
                s.path("k2.txt")) == 0);
    CHECK(slurp(s.path("k2.txt")) == "1.000000\n");

    CHECK(run("kappa " + s.path("a.txt") + " " + s.path("missing.txt")) == 1);
}
