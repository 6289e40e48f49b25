#include "intent/preprocess.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>

namespace intent {

namespace {

bool is_ascii_space(char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

bool is_ascii_punct(char c) {
    return std::ispunct(static_cast<unsigned char>(c)) != 0;
}

// Multibyte punctuation commonly seen in social-media text.
const char* const kUtf8Punct[] = {
    "‘", "’", "“", "”", "–", "—", "…",
};

// Returns the byte length of a punctuation mark starting at s[pos], or 0.
std::size_t punct_len_at(const std::string& s, std::size_t pos) {
    if (is_ascii_punct(s[pos])) return 1;
    for (const char* p : kUtf8Punct) {
        const std::size_t len = std::char_traits<char>::length(p);
        if (s.compare(pos, len, p) == 0) return len;
    }
    return 0;
}

// Byte length of the punctuation mark ending at s[end-1], or 0.
std::size_t punct_len_before(const std::string& s, std::size_t end) {
    if (is_ascii_punct(s[end - 1])) return 1;
    for (const char* p : kUtf8Punct) {
        const std::size_t len = std::char_traits<char>::length(p);
        if (end >= len && s.compare(end - len, len, p) == 0) return len;
    }
    return 0;
}

std::string strip_edges(const std::string& token) {
    std::size_t b = 0, e = token.size();
    while (b < e) {
        const std::size_t len = punct_len_at(token, b);
        if (len == 0) break;
        b += len;
    }
    while (e > b) {
        const std::size_t len = punct_len_before(token, e);
        if (len == 0) break;
        e -= len;
    }
    return token.substr(b, e - b);
}

std::string lower_ascii(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::string lemma_of(const std::string& token, const PreprocessConfig& config) {
    auto it = config.lemma_table.find(token);
    if (it != config.lemma_table.end()) return it->second;
    for (const auto& [suffix, replacement] : config.suffix_rules) {
        // A rule matches when the stem keeps at least two characters.
        if (token.size() > suffix.size() + 1 &&
            token.compare(token.size() - suffix.size(), suffix.size(), suffix) == 0) {
            return token.substr(0, token.size() - suffix.size()) + replacement;
        }
    }
    return token;
}

} // namespace

PreprocessConfig PreprocessConfig::defaults() {
    PreprocessConfig config;
    config.suffix_rules = {
        {"ies", "y"}, {"sses", "ss"}, {"ing", ""}, {"ed", ""}, {"es", ""}, {"s", ""},
    };
    return config;
}

TokenSequence tokenize(const std::string& text, const PreprocessConfig& config) {
    TokenSequence seq;
    std::string current;
    auto flush = [&] {
        if (current.empty()) return;
        std::string token = config.strip_punctuation ? strip_edges(current) : current;
        if (config.lowercase) token = lower_ascii(std::move(token));
        if (!token.empty()) seq.tokens.push_back(std::move(token));
        current.clear();
    };
    for (char c : text) {
        if (is_ascii_space(c)) flush();
        else current += c;
    }
    flush();
    return seq;
}

TokenSequence remove_stopwords(const TokenSequence& tokens,
                               const std::set<std::string>& stoplist) {
    TokenSequence out;
    out.source_post_id = tokens.source_post_id;
    for (const auto& t : tokens.tokens) {
        if (!stoplist.count(t)) out.tokens.push_back(t);
    }
    return out;
}

TokenSequence lemmatize(const TokenSequence& tokens, const PreprocessConfig& config) {
    TokenSequence out;
    out.source_post_id = tokens.source_post_id;
    const auto& ts = tokens.tokens;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (!config.bigram_table.empty() && i + 1 < ts.size()) {
            auto it = config.bigram_table.find(ts[i] + " " + ts[i + 1]);
            if (it != config.bigram_table.end()) {
                out.tokens.push_back(it->second);
                ++i;
                continue;
            }
        }
        out.tokens.push_back(lemma_of(ts[i], config));
    }
    return out;
}

TokenSequence preprocess_post(const Post& post, const PreprocessConfig& config) {
    TokenSequence seq = tokenize(post.text, config);
    seq.source_post_id = post.id;
    seq = remove_stopwords(seq, config.stopwords);
    return lemmatize(seq, config);
}

std::set<std::string> load_stopwords(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open stopword file: " + path);
    std::set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string word;
        for (char c : line) {
            if (!is_ascii_space(c)) word += c;
        }
        if (!word.empty()) words.insert(lower_ascii(word));
    }
    return words;
}

void load_lemmas(const std::string& path, PreprocessConfig& config) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open lemma file: " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw std::runtime_error("lemma file " + path + ": missing tab at line " +
                                     std::to_string(lineno));
        }
        const std::string surface = lower_ascii(line.substr(0, tab));
        const std::string lemma = lower_ascii(line.substr(tab + 1));
        if (surface.empty() || lemma.empty()) {
            throw std::runtime_error("lemma file " + path + ": empty entry at line " +
                                     std::to_string(lineno));
        }
        if (surface.find(' ') != std::string::npos) {
            config.bigram_table[surface] = lemma;
        } else {
            config.lemma_table[surface] = lemma;
        }
    }
}

} // namespace intent
