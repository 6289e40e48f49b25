#include "intent/corpus.hpp"

#include "intent/csv.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace intent {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

void finalize(Corpus& corpus) {
    std::set<std::string> ids;
    std::set<std::string> labels;
    for (std::size_t i = 0; i < corpus.posts.size(); ++i) {
        const Post& p = corpus.posts[i];
        if (trim(p.text).empty()) {
            throw std::runtime_error("empty text at record " + std::to_string(i + 1));
        }
        if (!ids.insert(p.id).second) {
            throw std::runtime_error("duplicate post id '" + p.id + "' at record " +
                                     std::to_string(i + 1));
        }
        if (p.label) labels.insert(*p.label);
    }
    if (labels.size() > 2) {
        std::string msg = "more than 2 distinct labels:";
        for (const auto& l : labels) msg += " '" + l + "'";
        throw std::runtime_error(msg);
    }
    corpus.labels.assign(labels.begin(), labels.end());
}

Corpus parse_jsonl(const std::string& content) {
    Corpus corpus;
    std::istringstream in(content);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw std::runtime_error("malformed JSON at line " + std::to_string(lineno) +
                                     ": " + e.what());
        }
        if (!j.is_object() || !j.contains("id") || !j.contains("text")) {
            throw std::runtime_error("record at line " + std::to_string(lineno) +
                                     " is missing 'id' or 'text'");
        }
        Post p;
        p.id = j["id"].is_string() ? j["id"].get<std::string>() : j["id"].dump();
        p.text = j["text"].get<std::string>();
        if (j.contains("label") && !j["label"].is_null()) {
            p.label = j["label"].get<std::string>();
        }
        if (j.contains("meta") && j["meta"].is_object()) {
            for (auto& [k, v] : j["meta"].items()) {
                p.meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
            }
        }
        corpus.posts.push_back(std::move(p));
    }
    return corpus;
}

Corpus parse_csv(const std::string& content) {
    auto rows = csv::parse(content);
    if (rows.empty()) throw std::runtime_error("CSV corpus has no header row");
    const auto& header = rows[0];
    auto col = [&](const std::string& name) -> int {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) return static_cast<int>(i);
        }
        return -1;
    };
    const int id_col = col("id");
    const int text_col = col("text");
    const int label_col = col("label");
    if (id_col < 0 || text_col < 0) {
        throw std::runtime_error("CSV header must contain 'id' and 'text' columns");
    }
    Corpus corpus;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        const std::size_t need =
            static_cast<std::size_t>(std::max(id_col, text_col)) + 1;
        if (row.size() < need) {
            throw std::runtime_error("malformed CSV record " + std::to_string(r));
        }
        Post p;
        p.id = row[static_cast<std::size_t>(id_col)];
        p.text = row[static_cast<std::size_t>(text_col)];
        if (label_col >= 0 && static_cast<std::size_t>(label_col) < row.size()) {
            const std::string& l = row[static_cast<std::size_t>(label_col)];
            if (!l.empty()) p.label = l;
        }
        corpus.posts.push_back(std::move(p));
    }
    return corpus;
}

} // namespace

Corpus parse_corpus(const std::string& content, CorpusFormat format) {
    Corpus corpus =
        format == CorpusFormat::jsonl ? parse_jsonl(content) : parse_csv(content);
    finalize(corpus);
    return corpus;
}

Corpus load_corpus(const std::string& path, CorpusFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open corpus file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_corpus(buf.str(), format);
}

std::map<std::string, LabelStat> label_distribution(const Corpus& corpus) {
    std::map<std::string, LabelStat> dist;
    for (const Post& p : corpus.posts) {
        if (!p.label) {
            throw std::runtime_error("unlabeled post '" + p.id + "'");
        }
        dist[*p.label].count++;
    }
    const double n = static_cast<double>(corpus.size());
    for (auto& [name, stat] : dist) {
        stat.fraction = static_cast<double>(stat.count) / n;
    }
    return dist;
}

FoldPlan split_stratified(const Corpus& corpus, int k, std::uint64_t seed) {
    const auto n = corpus.size();
    if (k < 2) throw std::runtime_error("fold count must be >= 2");
    if (static_cast<std::size_t>(k) > n) {
        throw std::runtime_error("fold count " + std::to_string(k) +
                                 " exceeds corpus size " + std::to_string(n));
    }
    // Group post indices per class, shuffle each group with a seeded
    // mt19937, then deal round-robin so per-fold class counts differ by
    // at most one.
    std::map<std::string, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < n; ++i) {
        const Post& p = corpus.posts[i];
        if (!p.label) throw std::runtime_error("unlabeled post '" + p.id + "'");
        by_class[*p.label].push_back(i);
    }
    FoldPlan plan;
    plan.k = k;
    plan.seed = seed;
    plan.assignments.assign(n, -1);
    std::mt19937_64 rng(seed);
    // the fold cursor carries over between classes so every fold is used
    // even when k approaches n (leave-one-out)
    std::size_t cursor = 0;
    for (auto& [label, indices] : by_class) {
        std::shuffle(indices.begin(), indices.end(), rng);
        for (std::size_t i : indices) {
            plan.assignments[i] = static_cast<int>(cursor % static_cast<std::size_t>(k));
            ++cursor;
        }
    }
    return plan;
}

std::vector<std::size_t> FoldPlan::train_indices(int fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        if (assignments[i] != fold) out.push_back(i);
    }
    return out;
}

std::vector<std::size_t> FoldPlan::test_indices(int fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        if (assignments[i] == fold) out.push_back(i);
    }
    return out;
}

} // namespace intent
