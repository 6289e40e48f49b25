#include "intent/evaluate.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <map>
#include <set>
#include <stdexcept>

namespace intent {

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
    tp += other.tp;
    fp += other.fp;
    fn += other.fn;
    tn += other.tn;
    return *this;
}

ConfusionMatrix confusion(const std::vector<std::string>& y_true,
                          const std::vector<std::string>& y_pred,
                          const std::string& positive) {
    if (y_true.size() != y_pred.size()) {
        throw std::runtime_error("confusion: label vectors differ in length");
    }
    if (y_true.empty()) throw std::runtime_error("confusion: empty label vectors");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const bool actual = y_true[i] == positive;
        const bool predicted = y_pred[i] == positive;
        if (actual && predicted) cm.tp++;
        else if (!actual && predicted) cm.fp++;
        else if (actual && !predicted) cm.fn++;
        else cm.tn++;
    }
    return cm;
}

MetricSet metrics(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw std::runtime_error("metrics: empty confusion matrix");
    MetricSet m;
    const double tp = static_cast<double>(cm.tp);
    if (cm.tp + cm.fp == 0) {
        m.degenerate_precision = true;
    } else {
        m.precision = tp / static_cast<double>(cm.tp + cm.fp);
    }
    if (cm.tp + cm.fn == 0) {
        m.degenerate_recall = true;
    } else {
        m.recall = tp / static_cast<double>(cm.tp + cm.fn);
    }
    if (m.precision + m.recall == 0.0) {
        m.degenerate_f = true;
    } else {
        m.f_measure = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    }
    m.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
    return m;
}

namespace {

FoldResult run_fold(const PipelineConfig& config, const Corpus& corpus,
                    const FoldPlan& plan, int fold, const std::string& positive) {
    const auto start = std::chrono::steady_clock::now();
    const auto train_idx = plan.train_indices(fold);
    const auto test_idx = plan.test_indices(fold);

    std::set<std::string> train_classes;
    for (std::size_t i : train_idx) {
        if (corpus.posts[i].label) train_classes.insert(*corpus.posts[i].label);
    }
    if (train_classes.size() < 2) {
        throw std::runtime_error("fold " + std::to_string(fold) +
                                 " has a single class in its training split");
    }

    PipelineConfig fold_config = config;
    fold_config.classifier.seed = config.classifier.seed + static_cast<std::uint64_t>(fold);
    const FittedPipeline fp = fit_pipeline(fold_config, corpus, train_idx);

    FoldResult result;
    result.fold = fold;
    result.features = fp.selected_features;
    for (std::size_t i : test_idx) {
        const Post& post = corpus.posts[i];
        result.post_ids.push_back(post.id);
        result.y_true.push_back(post.label.value_or(""));
        result.y_pred.push_back(fp.predict_post(post));
    }
    result.cm = confusion(result.y_true, result.y_pred, positive);
    result.metrics = metrics(result.cm);
    result.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

} // namespace

EvalReport cross_validate(const PipelineConfig& config, const Corpus& corpus,
                          const FoldPlan& plan, int threads) {
    if (plan.assignments.size() != corpus.size()) {
        throw std::runtime_error("fold plan does not cover the corpus");
    }
    const auto start = std::chrono::steady_clock::now();

    std::string positive = config.positive_class;
    if (std::find(corpus.labels.begin(), corpus.labels.end(), positive) ==
        corpus.labels.end()) {
        positive = corpus.labels.empty() ? positive : corpus.labels.front();
    }

    EvalReport report;
    report.pipeline_descriptor = config.descriptor();
    report.positive_class = positive;
    report.seed = plan.seed;
    report.folds.resize(static_cast<std::size_t>(plan.k));

    if (threads > 1) {
        std::vector<std::future<FoldResult>> futures;
        for (int fold = 0; fold < plan.k; ++fold) {
            futures.push_back(std::async(std::launch::async, run_fold,
                                         std::cref(config), std::cref(corpus),
                                         std::cref(plan), fold, positive));
        }
        for (int fold = 0; fold < plan.k; ++fold) {
            report.folds[static_cast<std::size_t>(fold)] =
                futures[static_cast<std::size_t>(fold)].get();
        }
    } else {
        for (int fold = 0; fold < plan.k; ++fold) {
            report.folds[static_cast<std::size_t>(fold)] =
                run_fold(config, corpus, plan, fold, positive);
        }
    }

    double prec = 0.0, rec = 0.0, f = 0.0, acc = 0.0;
    for (const auto& fr : report.folds) {
        report.pooled += fr.cm;
        prec += fr.metrics.precision;
        rec += fr.metrics.recall;
        f += fr.metrics.f_measure;
        acc += fr.metrics.accuracy;
    }
    report.micro = metrics(report.pooled);
    const double k = static_cast<double>(plan.k);
    report.macro.precision = prec / k;
    report.macro.recall = rec / k;
    report.macro.f_measure = f / k;
    report.macro.accuracy = acc / k;
    report.total_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

double cohen_kappa(const std::vector<std::string>& labels_a,
                   const std::vector<std::string>& labels_b) {
    if (labels_a.size() != labels_b.size()) {
        throw std::runtime_error("kappa: label vectors differ in length");
    }
    if (labels_a.empty()) throw std::runtime_error("kappa: empty label vectors");
    const double n = static_cast<double>(labels_a.size());

    std::size_t agree = 0;
    std::map<std::string, std::size_t> marginal_a, marginal_b;
    for (std::size_t i = 0; i < labels_a.size(); ++i) {
        if (labels_a[i] == labels_b[i]) ++agree;
        marginal_a[labels_a[i]]++;
        marginal_b[labels_b[i]]++;
    }
    const double p_o = static_cast<double>(agree) / n;
    double p_e = 0.0;
    for (const auto& [label, count_a] : marginal_a) {
        const auto it = marginal_b.find(label);
        if (it == marginal_b.end()) continue;
        p_e += (static_cast<double>(count_a) / n) *
               (static_cast<double>(it->second) / n);
    }
    // both annotators constant and identical: perfect agreement by convention
    if (p_e >= 1.0) return 1.0;
    return (p_o - p_e) / (1.0 - p_e);
}

} // namespace intent
