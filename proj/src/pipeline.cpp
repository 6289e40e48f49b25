#include "intent/pipeline.hpp"

#include <json.hpp>

#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace intent {

namespace {

using nlohmann::json;

json vec_to_json(ConstVectorRef v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

VectorXs vec_from_json(const json& a) {
    VectorXs v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[static_cast<Eigen::Index>(i)] = a[i];
    return v;
}

json mat_to_json(ConstMatrixRef m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        rows.push_back(vec_to_json(m.row(i).transpose()));
    }
    return rows;
}

MatrixXs mat_from_json(const json& rows) {
    if (rows.empty()) return MatrixXs(0, 0);
    MatrixXs m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        m.row(static_cast<Eigen::Index>(i)) = vec_from_json(rows[i]).transpose();
    }
    return m;
}

std::vector<TokenSequence> token_streams(const Corpus& corpus,
                                         const std::vector<std::size_t>& indices,
                                         const PreprocessConfig& prep, bool raw) {
    std::vector<TokenSequence> streams;
    streams.reserve(indices.size());
    for (std::size_t i : indices) {
        const Post& post = corpus.posts[i];
        if (raw) {
            TokenSequence seq = tokenize(post.text, prep);
            seq.source_post_id = post.id;
            streams.push_back(std::move(seq));
        } else {
            streams.push_back(preprocess_post(post, prep));
        }
    }
    return streams;
}

} // namespace

std::string to_string(FeaturizerKind kind) {
    return kind == FeaturizerKind::lexicon ? "lexicon" : "terms";
}

std::string PipelineConfig::descriptor() const {
    std::ostringstream out;
    out << to_string(featurizer) << "+" << to_string(classifier.kind);
    if (featurizer == FeaturizerKind::lexicon) {
        out << " top_k=" << lexicon_top_k;
    } else {
        out << " min_df=" << min_df << " tfidf_top=" << tfidf_top
            << " chi_top=" << chi_top
            << " idf=" << (idf_mode == IdfMode::ratio ? "ratio" : "log")
            << " chi_weighting=" << (chi_weighting ? "on" : "off");
    }
    if (pca_k) out << " pca_k=" << *pca_k;
    else if (pca_variance) out << " pca=" << *pca_variance;
    else out << " pca=off";
    return out.str();
}

FittedPipeline fit_pipeline(const PipelineConfig& config, const Corpus& corpus,
                            const std::vector<std::size_t>& train_indices) {
    if (train_indices.empty()) throw std::runtime_error("empty training set");

    std::vector<std::string> labels;
    labels.reserve(train_indices.size());
    for (std::size_t i : train_indices) {
        const Post& p = corpus.posts[i];
        if (!p.label) throw std::runtime_error("unlabeled training post '" + p.id + "'");
        labels.push_back(*p.label);
    }

    FittedPipeline fp;
    fp.featurizer = config.featurizer;
    fp.prep = config.prep;
    fp.lexicon_on_raw_tokens = config.lexicon_on_raw_tokens;
    fp.idf_mode = config.idf_mode;
    fp.chi_weighting = config.chi_weighting;

    FeatureMatrix X;
    if (config.featurizer == FeaturizerKind::lexicon) {
        fp.lexicon = config.lexicon;
        if (fp.lexicon.categories.empty()) {
            throw std::runtime_error("lexicon pipeline configured without a lexicon");
        }
        const auto streams = token_streams(corpus, train_indices, config.prep,
                                           config.lexicon_on_raw_tokens);
        const FeatureMatrix full = lexicon_matrix(streams, fp.lexicon);
        fp.ranking = rank_by_mean_gap(full, labels);
        const int top_k = std::min<int>(config.lexicon_top_k,
                                        static_cast<int>(full.feature_names.size()));
        X = select_features(full, fp.ranking, top_k);
        fp.selected_features = X.feature_names;
    } else {
        const auto streams = token_streams(corpus, train_indices, config.prep, false);
        fp.vocab = build_vocabulary(streams, config.min_df);
        TermDocMatrix tm = build_term_matrix(streams, fp.vocab, config.idf_mode);
        const std::size_t tfidf_top = std::min(config.tfidf_top, tm.terms.size());
        tm = select_top_tfidf(tm, tfidf_top);
        const std::size_t chi_top = std::min(config.chi_top, tm.terms.size());
        fp.selection = select_top_chi(tm, labels, chi_top);
        ChiSelection weights = fp.selection;
        if (!config.chi_weighting) {
            for (auto& s : weights) s.chi2 = 1.0;
        }
        const TermDocMatrix weighted = weight_by_chi(tm, weights);
        X = to_dense(weighted);
        fp.selected_features = X.feature_names;
    }

    MatrixXs train_x = X.values;
    if (config.pca_k) {
        fp.pca = pca_fit_k(train_x, *config.pca_k);
        train_x = pca_transform(*fp.pca, train_x);
    } else if (config.pca_variance) {
        fp.pca = pca_fit(train_x, *config.pca_variance);
        train_x = pca_transform(*fp.pca, train_x);
    }

    fp.model = train(config.classifier, train_x, labels);
    return fp;
}

FittedPipeline fit_pipeline(const PipelineConfig& config, const Corpus& corpus) {
    std::vector<std::size_t> all(corpus.size());
    std::iota(all.begin(), all.end(), 0);
    return fit_pipeline(config, corpus, all);
}

VectorXs FittedPipeline::featurize(const Post& post) const {
    const auto d = static_cast<Eigen::Index>(selected_features.size());
    VectorXs x = VectorXs::Zero(d);
    if (featurizer == FeaturizerKind::lexicon) {
        TokenSequence seq;
        if (lexicon_on_raw_tokens) {
            seq = tokenize(post.text, prep);
            seq.source_post_id = post.id;
        } else {
            seq = preprocess_post(post, prep);
        }
        if (seq.tokens.empty()) return x; // all-stopword/punctuation post: zero vector
        const auto fv = featurize_lexicon(seq, lexicon);
        for (Eigen::Index j = 0; j < d; ++j) {
            x[j] = fv.values.at(selected_features[static_cast<std::size_t>(j)]);
        }
    } else {
        const TokenSequence seq = preprocess_post(post, prep);
        std::map<std::string, std::size_t> tf;
        for (const auto& t : seq.tokens) tf[t]++;
        for (Eigen::Index j = 0; j < d; ++j) {
            const auto& term = selected_features[static_cast<std::size_t>(j)];
            const auto it = tf.find(term);
            if (it == tf.end()) continue;
            double w = tfidf_weight(it->second, vocab.df.at(term), vocab.n_docs, idf_mode);
            if (chi_weighting) w *= selection[static_cast<std::size_t>(j)].chi2;
            x[j] = w;
        }
    }
    return x;
}

std::string FittedPipeline::predict_post(const Post& post) const {
    VectorXs x = featurize(post);
    if (pca) {
        x = pca_transform(*pca, x.transpose()).row(0).transpose();
    }
    return predict(model, x);
}

FeatureMatrix FittedPipeline::feature_rows(const std::vector<Post>& posts) const {
    FeatureMatrix m;
    m.feature_names = selected_features;
    m.values.resize(static_cast<Eigen::Index>(posts.size()),
                    static_cast<Eigen::Index>(selected_features.size()));
    for (std::size_t i = 0; i < posts.size(); ++i) {
        m.post_ids.push_back(posts[i].id);
        m.values.row(static_cast<Eigen::Index>(i)) = featurize(posts[i]).transpose();
    }
    return m;
}

std::string FittedPipeline::save() const {
    json j;
    j["format_version"] = 1;
    j["featurizer"] = to_string(featurizer);
    j["lexicon_on_raw_tokens"] = lexicon_on_raw_tokens;
    j["idf_mode"] = idf_mode == IdfMode::ratio ? "ratio" : "log";
    j["chi_weighting"] = chi_weighting;

    json prep_j;
    prep_j["stopwords"] = std::vector<std::string>(prep.stopwords.begin(),
                                                   prep.stopwords.end());
    prep_j["lemma_table"] = prep.lemma_table;
    prep_j["bigram_table"] = prep.bigram_table;
    json rules = json::array();
    for (const auto& [suffix, repl] : prep.suffix_rules) {
        rules.push_back({suffix, repl});
    }
    prep_j["suffix_rules"] = std::move(rules);
    prep_j["lowercase"] = prep.lowercase;
    prep_j["strip_punctuation"] = prep.strip_punctuation;
    j["prep"] = std::move(prep_j);

    json lex = json::array();
    for (const auto& cat : lexicon.categories) {
        json c;
        c["name"] = cat.name;
        if (cat.parent) c["parent"] = *cat.parent;
        c["patterns"] = cat.patterns;
        lex.push_back(std::move(c));
    }
    j["lexicon"] = std::move(lex);

    json ranking_j = json::array();
    for (const auto& g : ranking) {
        ranking_j.push_back({g.feature, g.mean_a, g.mean_b, g.abs_gap});
    }
    j["ranking"] = std::move(ranking_j);

    j["vocab"] = {{"terms", vocab.terms}, {"df", vocab.df}, {"n_docs", vocab.n_docs}};

    json sel = json::array();
    for (const auto& s : selection) {
        sel.push_back({s.term, s.chi2, s.predicted_class});
    }
    j["selection"] = std::move(sel);
    j["selected_features"] = selected_features;

    if (pca) {
        j["pca"] = {{"mean", vec_to_json(pca->mean)},
                    {"components", mat_to_json(pca->components.leftCols(pca->k))},
                    {"explained_variance",
                     vec_to_json(pca->explained_variance.head(pca->k))},
                    {"k", pca->k}};
    }
    j["model"] = json::parse(save_model(model));
    return j.dump();
}

FittedPipeline FittedPipeline::load(const std::string& bytes) {
    json j;
    try {
        j = json::parse(bytes);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("corrupt pipeline payload: ") + e.what());
    }
    if (j.value("format_version", -1) != 1) {
        throw std::runtime_error("unsupported pipeline format version");
    }
    FittedPipeline fp;
    try {
        fp.featurizer = j.at("featurizer").get<std::string>() == "lexicon"
                            ? FeaturizerKind::lexicon
                            : FeaturizerKind::terms;
        fp.lexicon_on_raw_tokens = j.at("lexicon_on_raw_tokens").get<bool>();
        fp.idf_mode = j.at("idf_mode").get<std::string>() == "ratio" ? IdfMode::ratio
                                                                     : IdfMode::log;
        fp.chi_weighting = j.at("chi_weighting").get<bool>();

        const json& prep_j = j.at("prep");
        const auto stop = prep_j.at("stopwords").get<std::vector<std::string>>();
        fp.prep.stopwords.insert(stop.begin(), stop.end());
        fp.prep.lemma_table =
            prep_j.at("lemma_table").get<std::map<std::string, std::string>>();
        fp.prep.bigram_table =
            prep_j.at("bigram_table").get<std::map<std::string, std::string>>();
        fp.prep.suffix_rules.clear();
        for (const auto& r : prep_j.at("suffix_rules")) {
            fp.prep.suffix_rules.emplace_back(r.at(0).get<std::string>(),
                                              r.at(1).get<std::string>());
        }
        fp.prep.lowercase = prep_j.at("lowercase").get<bool>();
        fp.prep.strip_punctuation = prep_j.at("strip_punctuation").get<bool>();

        for (const auto& c : j.at("lexicon")) {
            CategoryLexicon::Category cat;
            cat.name = c.at("name").get<std::string>();
            if (c.contains("parent")) cat.parent = c.at("parent").get<std::string>();
            cat.patterns = c.at("patterns").get<std::vector<std::string>>();
            fp.lexicon.categories.push_back(std::move(cat));
        }

        for (const auto& g : j.at("ranking")) {
            fp.ranking.push_back({g.at(0).get<std::string>(), g.at(1).get<double>(),
                                  g.at(2).get<double>(), g.at(3).get<double>()});
        }
        fp.vocab.terms = j.at("vocab").at("terms").get<std::vector<std::string>>();
        fp.vocab.df =
            j.at("vocab").at("df").get<std::map<std::string, std::size_t>>();
        fp.vocab.n_docs = j.at("vocab").at("n_docs").get<std::size_t>();
        for (const auto& s : j.at("selection")) {
            fp.selection.push_back({s.at(0).get<std::string>(), s.at(1).get<double>(),
                                    s.at(2).get<std::string>()});
        }
        fp.selected_features =
            j.at("selected_features").get<std::vector<std::string>>();
        if (j.contains("pca")) {
            PcaModel pca;
            pca.mean = vec_from_json(j.at("pca").at("mean"));
            pca.components = mat_from_json(j.at("pca").at("components"));
            pca.explained_variance = vec_from_json(j.at("pca").at("explained_variance"));
            pca.k = j.at("pca").at("k").get<int>();
            fp.pca = std::move(pca);
        }
        fp.model = load_model(j.at("model").dump());
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("corrupt pipeline payload: ") + e.what());
    }
    return fp;
}

} // namespace intent
