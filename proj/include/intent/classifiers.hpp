#pragma once

#include "intent/types.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace intent {

enum class ClassifierKind { svm, nb, dt, knn };
enum class NbVariant { gaussian, multinomial };
enum class KnnMetric { euclidean, cosine };

std::string to_string(ClassifierKind kind);
ClassifierKind classifier_kind_from_string(const std::string& s);

struct ClassifierSpec {
    ClassifierKind kind = ClassifierKind::svm;
    std::uint64_t seed = 0;

    double svm_lambda = 1e-3;
    int svm_epochs = 200;

    NbVariant nb_variant = NbVariant::gaussian;
    double nb_alpha = 1.0;
    double nb_var_floor = 1e-6;

    int dt_max_depth = 12;
    int dt_min_leaf = 2;

    int knn_k = 5;
    KnnMetric knn_metric = KnnMetric::euclidean;
};

struct SvmModel {
    VectorXs weights;
    double bias = 0.0;
    /// Regularized hinge objective of the running-average iterate at the
    /// end of each epoch.
    std::vector<double> objective_curve;
};

struct NbModel {
    NbVariant variant = NbVariant::gaussian;
    Eigen::Vector2d log_prior;
    // gaussian: per-class feature means and (floored) variances
    MatrixXs mean;     // 2 x d
    MatrixXs variance; // 2 x d
    // multinomial: per-class Laplace-smoothed log term probabilities
    MatrixXs log_prob; // 2 x d
};

struct DtNode {
    int feature = -1;       // -1 marks a leaf
    double threshold = 0.0; // go left when x[feature] <= threshold
    int left = -1;
    int right = -1;
    int leaf_class = 0;
};

struct DtModel {
    std::vector<DtNode> nodes; // nodes[0] is the root
};

struct KnnModel {
    int k = 5;
    KnnMetric metric = KnnMetric::euclidean;
    MatrixXs train_x;
    std::vector<int> train_y;
};

struct ClassifierModel {
    ClassifierKind kind = ClassifierKind::svm;
    std::array<std::string, 2> labels; // class index 0 / 1, ascending names
    std::variant<SvmModel, NbModel, DtModel, KnnModel> params;

    Eigen::Index dim() const;
};

ClassifierModel train(const ClassifierSpec& spec, ConstMatrixRef X,
                      const std::vector<std::string>& y);

std::string predict(const ClassifierModel& model, ConstVectorRef x);

std::vector<std::string> predict_batch(const ClassifierModel& model, ConstMatrixRef X);

/// Unnormalized per-class log posterior of a naive Bayes model.
Eigen::Vector2d nb_log_joint(const ClassifierModel& model, ConstVectorRef x);

/// Regularized hinge objective: lambda/2 ||w||^2 + mean hinge loss.
double svm_objective(ConstVectorRef w, double b, double lambda, ConstMatrixRef X,
                     const std::vector<int>& y_signed);

std::string save_model(const ClassifierModel& model);
ClassifierModel load_model(const std::string& bytes);

} // namespace intent
