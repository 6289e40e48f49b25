#include "intent/lexicon.hpp"

#include <algorithm>
#include <fstream>
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

[[noreturn]] void fail(std::size_t lineno, const std::string& msg) {
    throw std::runtime_error("lexicon line " + std::to_string(lineno) + ": " + msg);
}

} // namespace

std::vector<std::string> CategoryLexicon::category_names() const {
    std::vector<std::string> names;
    names.reserve(categories.size());
    for (const auto& c : categories) names.push_back(c.name);
    return names;
}

std::vector<std::string> CategoryLexicon::ancestors(const std::string& name) const {
    std::vector<std::string> chain;
    std::string current = name;
    while (true) {
        const Category* cat = nullptr;
        for (const auto& c : categories) {
            if (c.name == current) {
                cat = &c;
                break;
            }
        }
        if (!cat || !cat->parent) break;
        chain.push_back(*cat->parent);
        current = *cat->parent;
    }
    return chain;
}

CategoryLexicon parse_lexicon(const std::string& content) {
    CategoryLexicon lex;
    std::istringstream in(content);
    std::string raw;
    std::size_t lineno = 0;
    CategoryLexicon::Category* current = nullptr;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.rfind("category ", 0) == 0) {
            std::istringstream fields(line);
            std::string kw, name, parent_kw, parent;
            fields >> kw >> name;
            if (name.empty()) fail(lineno, "category without a name");
            for (const auto& c : lex.categories) {
                if (c.name == name) fail(lineno, "duplicate category '" + name + "'");
            }
            CategoryLexicon::Category cat;
            cat.name = name;
            if (fields >> parent_kw) {
                if (parent_kw != "parent" || !(fields >> parent)) {
                    fail(lineno, "expected 'parent <name>'");
                }
                cat.parent = parent;
            }
            lex.categories.push_back(std::move(cat));
            current = &lex.categories.back();
        } else {
            if (!current) fail(lineno, "pattern before any category header");
            if (line.find_first_of(" \t") != std::string::npos) {
                fail(lineno, "pattern '" + line + "' contains whitespace");
            }
            const auto star = line.find('*');
            if (star != std::string::npos && star != line.size() - 1) {
                fail(lineno, "'*' allowed only in trailing position: '" + line + "'");
            }
            if (line == "*") fail(lineno, "empty wildcard pattern");
            current->patterns.push_back(line);
        }
    }
    // parent references must resolve
    for (const auto& c : lex.categories) {
        if (!c.parent) continue;
        bool found = false;
        for (const auto& p : lex.categories) {
            if (p.name == *c.parent) {
                found = true;
                break;
            }
        }
        if (!found) {
            throw std::runtime_error("lexicon: category '" + c.name +
                                     "' references unknown parent '" + *c.parent + "'");
        }
    }
    return lex;
}

CategoryLexicon load_lexicon(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open lexicon file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_lexicon(buf.str());
}

std::set<std::string> match_token(const CategoryLexicon& lexicon,
                                  const std::string& token) {
    std::set<std::string> matched;
    for (const auto& cat : lexicon.categories) {
        for (const auto& pat : cat.patterns) {
            bool hit;
            if (!pat.empty() && pat.back() == '*') {
                hit = token.compare(0, pat.size() - 1, pat, 0, pat.size() - 1) == 0;
            } else {
                hit = token == pat;
            }
            if (hit) {
                matched.insert(cat.name);
                for (const auto& anc : lexicon.ancestors(cat.name)) {
                    matched.insert(anc);
                }
                break;
            }
        }
    }
    return matched;
}

LexiconFeatureVector featurize_lexicon(const TokenSequence& tokens,
                                       const CategoryLexicon& lexicon) {
    if (tokens.tokens.empty()) {
        throw std::runtime_error("cannot featurize empty post '" +
                                 tokens.source_post_id + "'");
    }
    LexiconFeatureVector fv;
    fv.post_id = tokens.source_post_id;
    fv.token_count = tokens.tokens.size();
    std::map<std::string, std::size_t> counts;
    for (const auto& c : lexicon.categories) counts[c.name] = 0;
    for (const auto& token : tokens.tokens) {
        for (const auto& cat : match_token(lexicon, token)) {
            counts[cat]++;
        }
    }
    for (const auto& [name, count] : counts) {
        fv.values[name] =
            100.0 * static_cast<double>(count) / static_cast<double>(fv.token_count);
    }
    return fv;
}

FeatureMatrix lexicon_matrix(const std::vector<TokenSequence>& posts,
                             const CategoryLexicon& lexicon) {
    FeatureMatrix m;
    m.feature_names = lexicon.category_names();
    m.values.resize(static_cast<Eigen::Index>(posts.size()),
                    static_cast<Eigen::Index>(m.feature_names.size()));
    for (std::size_t i = 0; i < posts.size(); ++i) {
        const auto fv = featurize_lexicon(posts[i], lexicon);
        m.post_ids.push_back(fv.post_id);
        for (std::size_t j = 0; j < m.feature_names.size(); ++j) {
            m.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                fv.values.at(m.feature_names[j]);
        }
    }
    return m;
}

std::vector<FeatureGap> rank_by_mean_gap(const FeatureMatrix& matrix,
                                         const std::vector<std::string>& labels) {
    if (static_cast<std::size_t>(matrix.rows()) != labels.size()) {
        throw std::runtime_error("feature matrix rows do not align with labels");
    }
    std::set<std::string> distinct(labels.begin(), labels.end());
    if (distinct.size() != 2) {
        throw std::runtime_error("mean-gap ranking requires exactly two classes, got " +
                                 std::to_string(distinct.size()));
    }
    const std::string class_a = *distinct.begin();
    Eigen::Index n_a = 0, n_b = 0;
    VectorXs sum_a = VectorXs::Zero(matrix.cols());
    VectorXs sum_b = VectorXs::Zero(matrix.cols());
    for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
        if (labels[static_cast<std::size_t>(i)] == class_a) {
            sum_a += matrix.values.row(i);
            ++n_a;
        } else {
            sum_b += matrix.values.row(i);
            ++n_b;
        }
    }
    std::vector<FeatureGap> ranking;
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
        FeatureGap g;
        g.feature = matrix.feature_names[static_cast<std::size_t>(j)];
        g.mean_a = sum_a[j] / static_cast<double>(n_a);
        g.mean_b = sum_b[j] / static_cast<double>(n_b);
        g.abs_gap = std::abs(g.mean_a - g.mean_b);
        ranking.push_back(std::move(g));
    }
    std::sort(ranking.begin(), ranking.end(), [](const FeatureGap& x, const FeatureGap& y) {
        if (x.abs_gap != y.abs_gap) return x.abs_gap > y.abs_gap;
        return x.feature < y.feature;
    });
    return ranking;
}

FeatureMatrix select_features(const FeatureMatrix& matrix,
                              const std::vector<FeatureGap>& ranking, int k) {
    if (k < 1 || static_cast<std::size_t>(k) > matrix.feature_names.size()) {
        throw std::runtime_error("feature selection k=" + std::to_string(k) +
                                 " out of range");
    }
    FeatureMatrix out;
    out.post_ids = matrix.post_ids;
    out.values.resize(matrix.rows(), k);
    for (int r = 0; r < k; ++r) {
        const auto& name = ranking[static_cast<std::size_t>(r)].feature;
        const auto it =
            std::find(matrix.feature_names.begin(), matrix.feature_names.end(), name);
        if (it == matrix.feature_names.end()) {
            throw std::runtime_error("ranking names unknown feature '" + name + "'");
        }
        const auto j = static_cast<Eigen::Index>(it - matrix.feature_names.begin());
        out.feature_names.push_back(name);
        out.values.col(r) = matrix.values.col(j);
    }
    return out;
}

} // namespace intent
