#include "intent/term_features.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace intent {

int Vocabulary::index_of(const std::string& term) const {
    const auto df_it = df.find(term);
    if (df_it == df.end()) return -1;
    const std::size_t target_df = df_it->second;
    const auto it = std::lower_bound(
        terms.begin(), terms.end(), term,
        [&](const std::string& a, const std::string& b) {
            const std::size_t dfa = a == term ? target_df : df.at(a);
            const std::size_t dfb = b == term ? target_df : df.at(b);
            if (dfa != dfb) return dfa > dfb;
            return a < b;
        });
    if (it != terms.end() && *it == term) return static_cast<int>(it - terms.begin());
    return -1;
}

Vocabulary build_vocabulary(const std::vector<TokenSequence>& posts,
                            std::size_t min_df) {
    if (posts.empty()) throw std::runtime_error("cannot build vocabulary from empty corpus");
    if (min_df < 1) throw std::runtime_error("min_df must be >= 1");
    Vocabulary vocab;
    vocab.n_docs = posts.size();
    std::map<std::string, std::size_t> df;
    for (const auto& post : posts) {
        std::set<std::string> seen(post.tokens.begin(), post.tokens.end());
        for (const auto& t : seen) df[t]++;
    }
    for (const auto& [term, count] : df) {
        if (count >= min_df) {
            vocab.terms.push_back(term);
            vocab.df[term] = count;
        }
    }
    std::sort(vocab.terms.begin(), vocab.terms.end(),
              [&](const std::string& a, const std::string& b) {
                  if (vocab.df[a] != vocab.df[b]) return vocab.df[a] > vocab.df[b];
                  return a < b;
              });
    return vocab;
}

double tfidf_weight(std::size_t tf, std::size_t df, std::size_t n_docs, IdfMode mode) {
    if (df == 0) throw std::runtime_error("tfidf_weight: term not in vocabulary (df = 0)");
    if (df > n_docs) throw std::runtime_error("tfidf_weight: df exceeds document count");
    const double ratio = static_cast<double>(n_docs) / static_cast<double>(df);
    const double idf = mode == IdfMode::ratio ? ratio : std::log(ratio);
    return static_cast<double>(tf) * idf;
}

SparseRow featurize_tfidf(const TokenSequence& tokens, const Vocabulary& vocab,
                          IdfMode mode) {
    std::map<int, std::size_t> tf;
    for (const auto& t : tokens.tokens) {
        const int idx = vocab.index_of(t);
        if (idx >= 0) tf[idx]++;
    }
    SparseRow row;
    for (const auto& [idx, count] : tf) {
        const auto& term = vocab.terms[static_cast<std::size_t>(idx)];
        row[idx] = tfidf_weight(count, vocab.df.at(term), vocab.n_docs, mode);
    }
    return row;
}

TermDocMatrix build_term_matrix(const std::vector<TokenSequence>& posts,
                                const Vocabulary& vocab, IdfMode mode) {
    TermDocMatrix m;
    m.terms = vocab.terms;
    m.n_docs = vocab.n_docs;
    for (const auto& post : posts) {
        m.post_ids.push_back(post.source_post_id);
        m.rows.push_back(featurize_tfidf(post, vocab, mode));
    }
    return m;
}

double chi_squared(const Contingency& c) {
    if (c.P + c.Q + c.M + c.N != c.D) {
        throw std::runtime_error("contingency counts do not sum to D");
    }
    const double P = static_cast<double>(c.P), Q = static_cast<double>(c.Q);
    const double M = static_cast<double>(c.M), N = static_cast<double>(c.N);
    const double pm = P + M, qn = Q + N, pq = P + Q, mn = M + N;
    if (pm == 0.0 || qn == 0.0 || pq == 0.0 || mn == 0.0) return 0.0;
    const double diff = P * N - M * Q;
    return static_cast<double>(c.D) * diff * diff / (pm * qn * pq * mn);
}

namespace {

std::vector<std::set<int>> presence_per_row(const TermDocMatrix& matrix) {
    std::vector<std::set<int>> presence;
    presence.reserve(matrix.rows.size());
    for (const auto& row : matrix.rows) {
        std::set<int> s;
        for (const auto& [idx, w] : row) {
            if (w > 0.0) s.insert(idx);
        }
        presence.push_back(std::move(s));
    }
    return presence;
}

} // namespace

TermDocMatrix select_top_tfidf(const TermDocMatrix& matrix, std::size_t k) {
    if (k < 1 || k > matrix.terms.size()) {
        throw std::runtime_error("tf-idf selection k out of range");
    }
    std::vector<double> mass(matrix.terms.size(), 0.0);
    for (const auto& row : matrix.rows) {
        for (const auto& [idx, w] : row) mass[static_cast<std::size_t>(idx)] += w;
    }
    std::vector<std::size_t> order(matrix.terms.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (mass[a] != mass[b]) return mass[a] > mass[b];
        return matrix.terms[a] < matrix.terms[b];
    });
    order.resize(k);

    TermDocMatrix out;
    out.n_docs = matrix.n_docs;
    out.post_ids = matrix.post_ids;
    std::vector<int> remap(matrix.terms.size(), -1);
    for (std::size_t j = 0; j < order.size(); ++j) {
        out.terms.push_back(matrix.terms[order[j]]);
        remap[order[j]] = static_cast<int>(j);
    }
    for (const auto& row : matrix.rows) {
        SparseRow nrow;
        for (const auto& [idx, w] : row) {
            const int nj = remap[static_cast<std::size_t>(idx)];
            if (nj >= 0) nrow[nj] = w;
        }
        out.rows.push_back(std::move(nrow));
    }
    return out;
}

ChiSelection select_top_chi(const TermDocMatrix& matrix,
                            const std::vector<std::string>& labels, std::size_t k) {
    if (labels.size() != matrix.rows.size()) {
        throw std::runtime_error("labels do not align with term matrix rows");
    }
    std::set<std::string> distinct(labels.begin(), labels.end());
    if (distinct.size() != 2) {
        throw std::runtime_error("chi-squared selection requires exactly two classes");
    }
    if (k < 1 || k > matrix.terms.size()) {
        throw std::runtime_error("chi-squared selection k out of range");
    }
    const std::string class_a = *distinct.begin();
    const std::string class_b = *std::next(distinct.begin());
    const std::size_t D = matrix.rows.size();
    std::size_t count_a = 0;
    for (const auto& l : labels) {
        if (l == class_a) ++count_a;
    }
    const auto presence = presence_per_row(matrix);

    ChiSelection scores;
    for (std::size_t j = 0; j < matrix.terms.size(); ++j) {
        std::size_t p = 0, q = 0;
        for (std::size_t i = 0; i < D; ++i) {
            if (!presence[i].count(static_cast<int>(j))) continue;
            if (labels[i] == class_a) ++p;
            else ++q;
        }
        Contingency c;
        c.D = D;
        c.P = p;
        c.Q = q;
        c.M = count_a - p;
        c.N = D - p - q - c.M;
        TermScore s;
        s.term = matrix.terms[j];
        s.chi2 = chi_squared(c);
        const double expected_p =
            static_cast<double>(count_a) * static_cast<double>(p + q) /
            static_cast<double>(D);
        s.predicted_class = static_cast<double>(p) > expected_p ? class_a : class_b;
        if (static_cast<double>(p) == expected_p) s.predicted_class = class_a;
        scores.push_back(std::move(s));
    }
    std::sort(scores.begin(), scores.end(), [](const TermScore& x, const TermScore& y) {
        if (x.chi2 != y.chi2) return x.chi2 > y.chi2;
        return x.term < y.term;
    });
    scores.resize(k);
    return scores;
}

TermDocMatrix weight_by_chi(const TermDocMatrix& matrix, const ChiSelection& selection) {
    TermDocMatrix out;
    out.n_docs = matrix.n_docs;
    out.post_ids = matrix.post_ids;
    std::vector<int> col_of(matrix.terms.size(), -1);
    std::vector<double> chi_of;
    for (const auto& s : selection) {
        const auto it = std::find(matrix.terms.begin(), matrix.terms.end(), s.term);
        if (it == matrix.terms.end()) {
            throw std::runtime_error("selection names term '" + s.term +
                                     "' absent from matrix");
        }
        col_of[static_cast<std::size_t>(it - matrix.terms.begin())] =
            static_cast<int>(out.terms.size());
        out.terms.push_back(s.term);
        chi_of.push_back(s.chi2);
    }
    for (const auto& row : matrix.rows) {
        SparseRow nrow;
        for (const auto& [idx, w] : row) {
            const int nj = col_of[static_cast<std::size_t>(idx)];
            if (nj >= 0) {
                const double v = w * chi_of[static_cast<std::size_t>(nj)];
                if (v != 0.0) nrow[nj] = v;
            }
        }
        out.rows.push_back(std::move(nrow));
    }
    return out;
}

FeatureMatrix to_dense(const TermDocMatrix& matrix) {
    FeatureMatrix m;
    m.post_ids = matrix.post_ids;
    m.feature_names = matrix.terms;
    m.values = MatrixXs::Zero(static_cast<Eigen::Index>(matrix.rows.size()),
                              static_cast<Eigen::Index>(matrix.terms.size()));
    for (std::size_t i = 0; i < matrix.rows.size(); ++i) {
        for (const auto& [idx, w] : matrix.rows[i]) {
            m.values(static_cast<Eigen::Index>(i), idx) = w;
        }
    }
    return m;
}

} // namespace intent
