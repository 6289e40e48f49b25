#pragma once

#include "intent/corpus.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace intent {

struct TokenSequence {
    std::vector<std::string> tokens;
    std::string source_post_id;
};

/// Normalization pipeline settings. Lemma table lookups (including bigram
/// "w1 w2" keys) take precedence over the ordered suffix rules.
struct PreprocessConfig {
    std::set<std::string> stopwords;
    std::map<std::string, std::string> lemma_table;  // unigram surface -> lemma
    std::map<std::string, std::string> bigram_table; // "w1 w2" -> lemma
    std::vector<std::pair<std::string, std::string>> suffix_rules;
    bool lowercase = true;
    bool strip_punctuation = true;

    static PreprocessConfig defaults();
};

TokenSequence tokenize(const std::string& text, const PreprocessConfig& config = {});
TokenSequence remove_stopwords(const TokenSequence& tokens,
                               const std::set<std::string>& stoplist);
TokenSequence lemmatize(const TokenSequence& tokens, const PreprocessConfig& config);

/// tokenize -> remove_stopwords -> lemmatize, in that order.
TokenSequence preprocess_post(const Post& post, const PreprocessConfig& config);

/// stopwords.txt: one token per line, '#' comments.
std::set<std::string> load_stopwords(const std::string& path);
/// lemmas.tsv: "surface<TAB>lemma"; bigram merges written "w1 w2<TAB>lemma".
void load_lemmas(const std::string& path, PreprocessConfig& config);

} // namespace intent
