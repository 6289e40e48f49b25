#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace intent {

using scalar = double;
using VectorXs = Eigen::VectorXd;
using MatrixXs = Eigen::MatrixXd;
using ConstMatrixRef = Eigen::Ref<const MatrixXs>;
using ConstVectorRef = Eigen::Ref<const VectorXs>;

/// Dense posts-by-features matrix with named columns and row provenance.
struct FeatureMatrix {
    std::vector<std::string> post_ids;      // one per row
    std::vector<std::string> feature_names; // one per column
    MatrixXs values;

    Eigen::Index rows() const { return values.rows(); }
    Eigen::Index cols() const { return values.cols(); }
};

} // namespace intent
