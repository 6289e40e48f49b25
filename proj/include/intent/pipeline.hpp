#pragma once

#include "intent/classifiers.hpp"
#include "intent/corpus.hpp"
#include "intent/lexicon.hpp"
#include "intent/pca.hpp"
#include "intent/preprocess.hpp"
#include "intent/term_features.hpp"
#include "intent/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace intent {

enum class FeaturizerKind { lexicon, terms };

std::string to_string(FeaturizerKind kind);

/// Everything needed to fit one experiment: featurizer branch, optional
/// PCA, classifier, and the positive class for precision/recall.
struct PipelineConfig {
    FeaturizerKind featurizer = FeaturizerKind::lexicon;
    PreprocessConfig prep = PreprocessConfig::defaults();
    /// Lexicon percentages are computed over the raw tokenized stream;
    /// term features consume the fully preprocessed stream.
    bool lexicon_on_raw_tokens = true;

    CategoryLexicon lexicon;
    int lexicon_top_k = 15;

    std::size_t min_df = 2;
    std::size_t tfidf_top = 300;
    std::size_t chi_top = 250;
    IdfMode idf_mode = IdfMode::ratio;
    bool chi_weighting = true;

    std::optional<double> pca_variance; // engaged when set
    std::optional<int> pca_k;

    ClassifierSpec classifier;
    std::string positive_class = "abuse";

    std::string descriptor() const;
};

/// A pipeline fitted on a training subset; featurization of unseen posts
/// never mutates fitted state.
struct FittedPipeline {
    FeaturizerKind featurizer = FeaturizerKind::lexicon;
    PreprocessConfig prep;
    bool lexicon_on_raw_tokens = true;
    CategoryLexicon lexicon;
    IdfMode idf_mode = IdfMode::ratio;
    bool chi_weighting = true;

    std::vector<FeatureGap> ranking;        // lexicon branch
    Vocabulary vocab;                       // terms branch
    ChiSelection selection;                 // terms branch
    std::vector<std::string> selected_features;

    std::optional<PcaModel> pca;
    ClassifierModel model;

    VectorXs featurize(const Post& post) const;
    std::string predict_post(const Post& post) const;
    /// Selected-feature values before PCA, one row per post.
    FeatureMatrix feature_rows(const std::vector<Post>& posts) const;

    std::string save() const;
    static FittedPipeline load(const std::string& bytes);
};

FittedPipeline fit_pipeline(const PipelineConfig& config, const Corpus& corpus,
                            const std::vector<std::size_t>& train_indices);

FittedPipeline fit_pipeline(const PipelineConfig& config, const Corpus& corpus);

} // namespace intent
