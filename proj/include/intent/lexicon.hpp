#pragma once

#include "intent/preprocess.hpp"
#include "intent/types.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace intent {

/// Hierarchical word-category lexicon. Patterns are literal words or
/// prefix wildcards with a trailing '*'.
struct CategoryLexicon {
    struct Category {
        std::string name;
        std::optional<std::string> parent;
        std::vector<std::string> patterns;
    };
    std::vector<Category> categories;

    std::vector<std::string> category_names() const;
    /// Transitive parent chain of a category (nearest first).
    std::vector<std::string> ancestors(const std::string& name) const;
};

CategoryLexicon load_lexicon(const std::string& path);
CategoryLexicon parse_lexicon(const std::string& content);

/// Categories matching the token, closed under the parent hierarchy.
std::set<std::string> match_token(const CategoryLexicon& lexicon,
                                  const std::string& token);

struct LexiconFeatureVector {
    std::string post_id;
    std::map<std::string, double> values; // category -> percentage in [0,100]
    std::size_t token_count = 0;
};

LexiconFeatureVector featurize_lexicon(const TokenSequence& tokens,
                                       const CategoryLexicon& lexicon);

/// Stacks per-post percentage vectors into a matrix with one column per
/// lexicon category (lexicon declaration order).
FeatureMatrix lexicon_matrix(const std::vector<TokenSequence>& posts,
                             const CategoryLexicon& lexicon);

struct FeatureGap {
    std::string feature;
    double mean_a = 0.0; // mean over the lexically smaller class
    double mean_b = 0.0;
    double abs_gap = 0.0;
};

/// Per-feature class means ordered by |mean gap| descending, feature name
/// ascending on ties. `labels` is row-aligned with `matrix`.
std::vector<FeatureGap> rank_by_mean_gap(const FeatureMatrix& matrix,
                                         const std::vector<std::string>& labels);

FeatureMatrix select_features(const FeatureMatrix& matrix,
                              const std::vector<FeatureGap>& ranking, int k);

} // namespace intent
