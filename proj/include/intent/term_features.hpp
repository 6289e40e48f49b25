#pragma once

#include "intent/preprocess.hpp"
#include "intent/types.hpp"

#include <map>
#include <string>
#include <vector>

namespace intent {

enum class IdfMode { ratio, log };

/// Training-side term inventory. Terms are ordered by document frequency
/// descending, term ascending on ties.
struct Vocabulary {
    std::vector<std::string> terms;
    std::map<std::string, std::size_t> df;
    std::size_t n_docs = 0;

    int index_of(const std::string& term) const; // -1 when absent
};

using SparseRow = std::map<int, double>; // term index -> weight

/// Posts-by-terms tf-idf matrix, sparse rows over a fixed term list.
struct TermDocMatrix {
    std::vector<std::string> terms;
    std::vector<std::string> post_ids;
    std::vector<SparseRow> rows;
    std::size_t n_docs = 0;
};

/// 2x2 presence/class contingency: D total posts, P posts of the designated
/// label containing the term, Q posts with the term outside the label,
/// M posts of the label without the term, N all remaining posts.
struct Contingency {
    std::size_t D = 0, P = 0, Q = 0, M = 0, N = 0;
};

struct TermScore {
    std::string term;
    double chi2 = 0.0;
    std::string predicted_class;
};

/// Chi-squared term scores ordered descending, term ascending on ties.
using ChiSelection = std::vector<TermScore>;

Vocabulary build_vocabulary(const std::vector<TokenSequence>& posts,
                            std::size_t min_df);

double tfidf_weight(std::size_t tf, std::size_t df, std::size_t n_docs,
                    IdfMode mode = IdfMode::ratio);

SparseRow featurize_tfidf(const TokenSequence& tokens, const Vocabulary& vocab,
                          IdfMode mode = IdfMode::ratio);

TermDocMatrix build_term_matrix(const std::vector<TokenSequence>& posts,
                                const Vocabulary& vocab,
                                IdfMode mode = IdfMode::ratio);

double chi_squared(const Contingency& c);

/// Keeps the top-k terms by mean tf-idf mass over all documents
/// (ties broken by term ascending).
TermDocMatrix select_top_tfidf(const TermDocMatrix& matrix, std::size_t k);

ChiSelection select_top_chi(const TermDocMatrix& matrix,
                            const std::vector<std::string>& labels, std::size_t k);

/// Restricts the matrix to the selected terms and multiplies each tf-idf
/// entry by its term's chi-squared value. Rows are not renormalized.
TermDocMatrix weight_by_chi(const TermDocMatrix& matrix, const ChiSelection& selection);

/// Densifies into a FeatureMatrix (column order = matrix.terms).
FeatureMatrix to_dense(const TermDocMatrix& matrix);

} // namespace intent
