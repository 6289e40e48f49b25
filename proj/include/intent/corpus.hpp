#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace intent {

struct Post {
    std::string id;
    std::string text;
    std::optional<std::string> label;
    std::map<std::string, std::string> meta;
};

/// Labeled post collection. At most two distinct label names may appear;
/// `labels` holds them in ascending lexical order.
struct Corpus {
    std::vector<Post> posts;
    std::vector<std::string> labels;

    std::size_t size() const { return posts.size(); }
};

/// Assignment of every post to exactly one of k folds, stratified by class.
struct FoldPlan {
    int k = 0;
    std::uint64_t seed = 0;
    std::vector<int> assignments; // parallel to Corpus::posts

    std::vector<std::size_t> train_indices(int fold) const;
    std::vector<std::size_t> test_indices(int fold) const;
};

enum class CorpusFormat { csv, jsonl };

Corpus load_corpus(const std::string& path, CorpusFormat format);
Corpus parse_corpus(const std::string& content, CorpusFormat format);

struct LabelStat {
    std::size_t count = 0;
    double fraction = 0.0;
};

std::map<std::string, LabelStat> label_distribution(const Corpus& corpus);

FoldPlan split_stratified(const Corpus& corpus, int k, std::uint64_t seed);

} // namespace intent
