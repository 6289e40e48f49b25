#pragma once

#include "intent/corpus.hpp"
#include "intent/pipeline.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace intent {

/// Counts relative to a designated positive class.
struct ConfusionMatrix {
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;

    std::size_t total() const { return tp + fp + fn + tn; }
    ConfusionMatrix& operator+=(const ConfusionMatrix& other);
};

struct MetricSet {
    double precision = 0.0;
    double recall = 0.0;
    double f_measure = 0.0;
    double accuracy = 0.0;
    // set when the corresponding denominator was zero and the metric was
    // reported as 0
    bool degenerate_precision = false;
    bool degenerate_recall = false;
    bool degenerate_f = false;
};

struct FoldResult {
    int fold = 0;
    ConfusionMatrix cm;
    MetricSet metrics;
    std::vector<std::string> post_ids;
    std::vector<std::string> y_true;
    std::vector<std::string> y_pred;
    std::vector<std::string> features; // final feature columns of this fold
    double seconds = 0.0;
};

struct EvalReport {
    std::string pipeline_descriptor;
    std::string positive_class;
    std::uint64_t seed = 0;
    std::vector<FoldResult> folds;
    ConfusionMatrix pooled;
    MetricSet micro; // from pooled counts
    MetricSet macro; // unweighted mean of fold metrics
    double total_seconds = 0.0;
};

ConfusionMatrix confusion(const std::vector<std::string>& y_true,
                          const std::vector<std::string>& y_pred,
                          const std::string& positive);

MetricSet metrics(const ConfusionMatrix& cm);

EvalReport cross_validate(const PipelineConfig& config, const Corpus& corpus,
                          const FoldPlan& plan, int threads = 1);

double cohen_kappa(const std::vector<std::string>& labels_a,
                   const std::vector<std::string>& labels_b);

} // namespace intent
